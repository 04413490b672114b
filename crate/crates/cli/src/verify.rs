use std::f64::consts::PI;

use bandlimit::{
    bernstein_ratio, default_shifts, exponential_type, favard_constant, group_boas, group_law_residual,
    hilbert_apply, hilbert_group, lks_check, lks_constant, make_reference, orbit_reconstruct, orbit_vt,
    plancherel_polya_check, rotation_instance, Error, Exponent, GroupInstance, Grid, LinearSpace,
    OrbitSampler, Reference, SeqWindow,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::{exponent_name, Params};
use crate::report::{emit, Check, Report};
use crate::{Failure, Suite};

const FAVARD_EXACT: [f64; 6] = [
    1.0,
    PI / 2.0,
    PI * PI / 8.0,
    PI * PI * PI / 24.0,
    5.0 * PI * PI * PI * PI / 384.0,
    PI * PI * PI * PI * PI / 240.0,
];

/// Inner window growth for the DHT group law; the cut costs ≈ 2‖a‖₁/(π²E) per entry.
const LAW_EXPAND: usize = 4_000_000;

pub fn run(suite: Suite, p: &Params) -> Result<u8, Failure> {
    let name = match suite {
        Suite::Bernstein => "bernstein",
        Suite::Pp => "pp",
        Suite::Lks => "lks",
        Suite::Favard => "favard",
        Suite::Group => "group",
        Suite::DhtLaw => "dht-law",
    };
    let checks = match suite {
        Suite::Bernstein => bernstein(p)?,
        Suite::Pp => match pp(p)? {
            Some(c) => c,
            None => return Ok(0),
        },
        Suite::Lks => lks(p)?,
        Suite::Favard => favard()?,
        Suite::Group => group(p)?,
        Suite::DhtLaw => dht_law(p)?,
    };
    let report = Report { suite: name.into(), checks };
    emit(p, &report.render(p.format, &p.header(&format!("verify {name}"))))?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn sigma(p: &Params) -> Result<f64, Failure> {
    let s = p.sigma.unwrap_or(1.0);
    if s > 0.0 && s.is_finite() {
        Ok(s)
    } else {
        Err(Failure::input(format!("--sigma must be finite and > 0, got {s}")))
    }
}

fn unit_random(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let n = v.norm();
    v.iter().map(|x| x / n).collect()
}

fn bernstein(p: &Params) -> Result<Vec<Check>, Failure> {
    let sigma = sigma(p)?;
    let wanted = p.exponents()?;
    let grid = Grid::new(-40.0, 40.0, 1601)?;
    let (one, two, inf) = (Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity);
    let cases = [
        (Reference::Sin { phase: 0.0 }, vec![inf]),
        (Reference::Cos, vec![inf]),
        (Reference::Sinc, vec![two, inf]),
        (Reference::Fejer, vec![one, two, inf]),
    ];
    let mut checks = Vec::new();
    for (id, exps) in cases {
        let f = make_reference(id, sigma)?;
        for e in exps.into_iter().filter(|e| wanted.contains(e)) {
            for m in 1..=3 {
                let b = bernstein_ratio(&f, m, e, grid)?;
                let rhs = b.bound * (1.0 + b.slack());
                checks.push(Check {
                    name: format!("{id}/m={m}/p={}", exponent_name(e)),
                    lhs: b.ratio,
                    rhs,
                    slack: rhs - b.ratio,
                    pass: b.holds(),
                });
            }
        }
    }
    // operator versions: rotation generator and the discrete Hilbert transform
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let rot = rotation_instance(&[0.3, 0.9, sigma])?;
    let v = unit_random(&mut rng, rot.dim());
    let mut d = v.clone();
    for k in 1..=6 {
        d = rot.generator(&d);
        checks.push(Check::le(format!("rotation/k={k}"), d.norm(), rot.sigma_bound().powi(k) * (1.0 + 1e-12)));
    }
    let a = SeqWindow::new(-4, unit_random(&mut rng, 12), 0.0)?;
    let mut h = a.clone();
    for k in 1..=6 {
        h = hilbert_apply(&h, 50);
        checks.push(Check::le(format!("dht/k={k}"), h.window_norm(), PI.powi(k)));
    }
    Ok(checks)
}

fn pp(p: &Params) -> Result<Option<Vec<Check>>, Failure> {
    let sigma = sigma(p)?;
    let nyquist = PI / sigma;
    let hs = match p.h {
        Some(h) if h > nyquist * (1.0 + 1e-12) => {
            eprintln!("bandlimit: warning: h = {h} exceeds π/σ = {nyquist}; out of contract, pp suite skipped");
            return Ok(None);
        }
        Some(h) if h > 0.0 => vec![h],
        Some(h) => return Err(Failure::input(format!("--h must be > 0, got {h}"))),
        None => vec![nyquist, nyquist / 2.0],
    };
    let mut checks = Vec::new();
    for id in Reference::ALL {
        let f = make_reference(id, sigma)?;
        for &h in &hs {
            for e in p.exponents()? {
                let tag = format!("{id}/h={h}/p={}", exponent_name(e));
                match plancherel_polya_check(&f, h, e, &default_shifts(h)) {
                    Ok(r) => {
                        let b = r.error_budget;
                        checks.push(Check {
                            name: format!("{tag}/lower"),
                            lhs: r.norm,
                            rhs: r.middle,
                            slack: r.lower_slack,
                            pass: r.lower_slack >= -b,
                        });
                        checks.push(Check {
                            name: format!("{tag}/upper"),
                            lhs: r.middle,
                            rhs: r.upper,
                            slack: r.upper_slack,
                            pass: r.upper_slack >= -b,
                        });
                    }
                    // all three terms infinite: nothing to compare
                    Err(Error::Domain(msg)) => eprintln!("bandlimit: note: {tag} vacuous ({msg})"),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(Some(checks))
}

fn lks(p: &Params) -> Result<Vec<Check>, Failure> {
    let mut checks = vec![Check::close("C(1,2)", lks_constant(1, 2)?, 2.0, 1e-12)];
    let rot = rotation_instance(&[0.4, 1.0, 1.7])?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for i in 0..10 {
        let v = unit_random(&mut rng, rot.dim());
        let mut norms = vec![v.norm()];
        let mut d = v.clone();
        for _ in 0..3 {
            d = rot.generator(&d);
            norms.push(d.norm());
        }
        for (k, n) in [(1, 2), (1, 3), (2, 3)] {
            let r = lks_check((norms[0], norms[k as usize], norms[n as usize]), k, n)?;
            checks.push(Check {
                name: format!("rotation#{i}/k={k}/n={n}"),
                lhs: r.lhs,
                rhs: r.rhs,
                slack: r.slack(),
                pass: r.pass,
            });
        }
    }
    Ok(checks)
}

fn favard() -> Result<Vec<Check>, Failure> {
    FAVARD_EXACT
        .iter()
        .enumerate()
        .map(|(j, &exact)| {
            let k = favard_constant(j as u32, 1e-13)?;
            Ok(Check::close(format!("K{j}"), k.value, exact, 1e-10))
        })
        .collect()
}

fn group(p: &Params) -> Result<Vec<Check>, Failure> {
    let trunc = p.truncation()?;
    let tol = p.tol;
    let rot = rotation_instance(&[0.5, 1.0, 1.5])?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let v = unit_random(&mut rng, rot.dim());
    let b = rot.bernstein(v.clone())?;
    let sampler = OrbitSampler::new(&b);
    let mut checks = Vec::new();
    for t in [0.3, 0.7, 1.9] {
        let exact = rot.orbit(t, &v);
        let s1 = orbit_reconstruct(&b, t, trunc)?;
        checks.push(Check::le(format!("reconstruct/t={t}"), s1.value.distance(&exact), tol));
        let vt = orbit_vt(&b, t, trunc)?;
        checks.push(Check::le(format!("vt/t={t}"), vt.value.distance(&exact), tol));
        let back = sampler.recover_initial(t, trunc)?;
        checks.push(Check::le(format!("recover/t={t}"), back.value.distance(&v), tol));
    }
    let mut d = v.clone();
    for r in 1..=3 {
        d = rot.generator(&d);
        let g = group_boas(&b, r, trunc)?;
        checks.push(Check::le(format!("boas/r={r}"), g.value.distance(&d), tol));
    }
    let top = rot.block_vector(2, (0.6, -0.8));
    let et = exponential_type(&rot, &top, 60)?;
    checks.push(Check::close("exponential_type", et.estimate, 1.5, 1e-6));
    Ok(checks)
}

fn dht_law(p: &Params) -> Result<Vec<Check>, Failure> {
    let mut checks = Vec::new();
    // ‖e^{H/2}e₀‖ = 1 with the window tail folded in
    let e0 = hilbert_group(0.5, &SeqWindow::unit(0), 10_000)?;
    let (lo, hi) = e0.norm_bounds();
    checks.push(Check::close("isometry/e0/t=0.5/upper", hi, 1.0, 1e-6));
    checks.push(Check::le("isometry/e0/t=0.5/lower", lo, 1.0));

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let a = SeqWindow::new(-4, unit_random(&mut rng, 12), 0.0)?;
    for s in [-0.7, 0.5, 1.0] {
        for t in [0.25, -1.5, 2.0] {
            let r = group_law_residual(s, t, &a, LAW_EXPAND, -8, 8)?;
            checks.push(Check::le(format!("law/s={s}/t={t}"), r.residual, 1e-6));
        }
    }
    for i in 0..100 {
        let len = rng.gen_range(1..40);
        let n0 = rng.gen_range(-20..20);
        let w = SeqWindow::new(n0, unit_random(&mut rng, len), 0.0)?;
        let (_, upper) = hilbert_apply(&w, 2000).norm_bounds();
        checks.push(Check {
            name: format!("schur#{i}"),
            lhs: upper,
            rhs: PI,
            slack: PI - upper,
            pass: upper < PI,
        });
    }
    Ok(checks)
}
