use std::f64::consts::PI;
use std::fmt::Write as _;

use bandlimit::{
    boas_on_samples, default_expand, dht_power, dht_vt, hilbert_apply, hilbert_group, make_reference,
    read_samples, read_sequence, sample_lattice_point, sinc_derivative, window_distance, wks_eval,
    write_samples, write_sequence, Estimate, Reference, UniformSamples,
};

use crate::params::Params;
use crate::report::emit;
use crate::{DhtAction, Failure};

fn read_checked_samples(p: &Params) -> Result<UniformSamples, Failure> {
    let s = read_samples(p.input()?)?;
    let agree = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
    if let Some(sigma) = p.sigma.filter(|v| !agree(*v, s.sigma())) {
        return Err(Failure::input(format!("--sigma {sigma} contradicts sidecar sigma {}", s.sigma())));
    }
    if let Some(h) = p.h.filter(|v| !agree(*v, s.h())) {
        return Err(Failure::input(format!("--h {h} contradicts sidecar h {}", s.h())));
    }
    Ok(s)
}

/// r-th derivative of a reference function in closed form.
fn reference_derivative(name: &str, sigma: f64, r: u32) -> Result<Box<dyn Fn(f64) -> f64>, Failure> {
    let id: Reference = name.parse()?;
    let rf = r as f64;
    let scale = sigma.powi(r as i32);
    Ok(match id {
        Reference::Sin { phase } => Box::new(move |x| scale * (sigma * x + phase + rf * PI / 2.0).sin()),
        Reference::Cos => Box::new(move |x| scale * (sigma * x + rf * PI / 2.0).cos()),
        Reference::Const => Box::new(move |_| if r == 0 { 1.0 } else { 0.0 }),
        Reference::Sinc => {
            let c = (sigma / PI).powi(r as i32);
            Box::new(move |x| c * sinc_derivative(r as i32, sigma * x / PI).unwrap_or(f64::NAN))
        }
        Reference::Fejer if r <= 1 => {
            let f = make_reference(id, sigma)?;
            Box::new(move |x| if r == 0 { f.eval(x) } else { f.deriv_eval(x).unwrap_or(f64::NAN) })
        }
        Reference::Fejer => return Err(Failure::input("fejer reference has closed forms only for order ≤ 1")),
    })
}

/// CSV of (x, value, tail_bound) with header and summary footer.
fn write_table(p: &Params, command: &str, s: &UniformSamples, r: u32, rows: &[(f64, Estimate)]) -> Result<(), Failure> {
    let mut out = format!("# {}\nx,value,tail_bound\n", p.header(command));
    for (x, e) in rows {
        writeln!(out, "{x:e},{:e},{:e}", e.value, e.tail_bound).unwrap();
    }
    let max_tail = rows.iter().map(|(_, e)| e.tail_bound).fold(0.0, f64::max);
    writeln!(out, "# points={} max_tail_bound={max_tail:e}", rows.len()).unwrap();
    if let Some(name) = &p.reference {
        let exact = reference_derivative(name, s.sigma(), r)?;
        let err = rows.iter().map(|(x, e)| (e.value - exact(*x)).abs()).fold(0.0, f64::max);
        writeln!(out, "# max_error_vs_{name}={err:e}").unwrap();
    }
    emit(p, &out)
}

fn in_range(p: &Params, x: f64) -> bool {
    p.from.map_or(true, |a| x >= a) && p.to.map_or(true, |b| x <= b)
}

pub fn differentiate(p: &Params) -> Result<u8, Failure> {
    let s = read_checked_samples(p)?;
    let r = p.order.unwrap_or(1);
    let trunc = p.truncation()?;
    let h = s.h();
    // odd orders live on midpoints, so the last node has no right neighbour
    let last = if r % 2 == 1 { s.k_max() - 1 } else { s.k_max() };
    let mut rows = Vec::new();
    for j in s.k_min()..=last {
        let x = sample_lattice_point(h, r, j);
        if !in_range(p, x) {
            continue;
        }
        let e = if r == 0 { wks_eval(&s, 0, x, p.tol)? } else { boas_on_samples(&s, r, j, trunc)? };
        rows.push((x, e));
    }
    if rows.is_empty() {
        return Err(Failure::input("no lattice points in the requested range"));
    }
    write_table(p, "differentiate", &s, r, &rows)?;
    Ok(0)
}

pub fn reconstruct(p: &Params) -> Result<u8, Failure> {
    let s = read_checked_samples(p)?;
    let m = p.order.unwrap_or(0);
    let h = s.h();
    let from = p.from.unwrap_or(s.k_min() as f64 * h);
    let to = p.to.unwrap_or(s.k_max() as f64 * h);
    let n = p.points.unwrap_or(201);
    if n < 1 || from.is_nan() || to.is_nan() || to < from {
        return Err(Failure::input("grid needs --points ≥ 1 and --from ≤ --to"));
    }
    let step = if n > 1 { (to - from) / (n - 1) as f64 } else { 0.0 };
    let rows = (0..n)
        .map(|i| {
            let x = if i + 1 == n { to } else { from + i as f64 * step };
            Ok((x, wks_eval(&s, m, x, p.tol)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    write_table(p, "reconstruct", &s, m, &rows)?;
    Ok(0)
}

fn need_t(p: &Params) -> Result<f64, Failure> {
    p.t.ok_or_else(|| Failure::input("--t is required"))
}

pub fn dht(action: DhtAction, p: &Params) -> Result<u8, Failure> {
    let a = read_sequence(p.input()?)?;
    let out = p.output()?;
    let trunc = p.truncation()?;
    let expand = p.expand.unwrap_or_else(|| default_expand(&a, trunc));
    let mut notes = vec![p.header(&format!("dht {action:?}").to_lowercase())];
    let result = match action {
        DhtAction::Apply => hilbert_apply(&a, expand),
        DhtAction::Orbit => {
            let b = hilbert_group(need_t(p)?, &a, expand)?;
            let residual = (b.window_norm() - a.window_norm()).abs();
            notes.push(format!("isometry_residual={residual:e} tail_l2={:e}", b.tail_l2()));
            b
        }
        DhtAction::Power => {
            let r = p.order.unwrap_or(1);
            let b = dht_power(&a, r, trunc, Some(expand))?;
            if r == 1 {
                let direct = hilbert_apply(&a, expand);
                let d = window_distance(&b, &direct, b.n0(), b.end() - 1);
                notes.push(format!("cross_check_apply={d:e} tail_l2={:e}", b.tail_l2()));
            }
            b
        }
        DhtAction::Vt => dht_vt(&a, need_t(p)?, trunc, Some(expand))?,
    };
    write_sequence(out, &result, &notes)?;
    Ok(0)
}

pub fn sample(kmin: i64, kmax: i64, p: &Params) -> Result<u8, Failure> {
    let reference = p.reference.as_deref().ok_or_else(|| Failure::input("--reference is required"))?;
    let sigma = p.sigma.unwrap_or(1.0);
    let f = make_reference(reference.parse()?, sigma)?;
    let h = p.h.unwrap_or(PI / sigma);
    let s = UniformSamples::from_fn(&f, h, kmin, kmax)?;
    write_samples(p.output()?, &s, &[p.header(&format!("sample first={kmin} last={kmax}"))])?;
    Ok(0)
}
