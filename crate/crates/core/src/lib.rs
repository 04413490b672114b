//! Bandlimited-function toolkit: sinc sampling, Boas-type differentiation,
//! Plancherel–Pólya and Landau–Kolmogorov–Stein checks, and orbit sampling for
//! one-parameter isometry groups, with the discrete Hilbert transform group as
//! the concrete infinite-dimensional instance.

// `!(x > 0.0)` is how NaN gets rejected alongside non-positive input
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boas;
pub mod dht;
pub mod error;
pub mod group;
pub mod inequalities;
pub mod io;
pub mod norm;
pub mod sampling;
pub mod sinc;
pub mod truncation;

pub use boas::{
    bernstein_ratio, boas_derivative, boas_derivative_fast, boas_on_samples, sample_lattice_point,
    BernsteinRatio, BoasStencil,
    FastBoasStencil, Grid,
};
pub use dht::{
    default_expand, dht_orbit_reconstruct, dht_power, dht_power_iterated, dht_vt, group_range,
    hilbert_apply, group_law_residual, hilbert_group, hilbert_group_range, pairing_check, window_distance, DhtGroup,
    GroupLawReport,
    PairingReport, SeqWindow,
};
pub use error::{Error, Result};
pub use group::{
    exponential_type, group_boas, instance_residuals, orbit_reconstruct, orbit_vt,
    recover_initial, rotation_instance, BernsteinVector, ExponentialType, GroupInstance,
    InstanceResiduals, LinearSpace, OrbitSampler, RotationGroup, VectorEstimate,
};
pub use inequalities::{
    default_shifts, discrete_norm, embedding_constant, favard_constant, lks_check, lks_constant,
    plancherel_polya_check, DiscreteNorm, FavardConstant, LksReport, PlancherelPolyaReport,
};
pub use io::{read_samples, read_sequence, sidecar_path, write_samples, write_sequence, SequenceSidecar};
pub use norm::Exponent;
pub use sampling::{
    fejer_regularize, make_reference, poisson_residual, riesz_trig_derivative,
    valiron_tschakaloff_eval, wks_eval, BandlimitedFn, Decay, Reference, SampleSidecar,
    SampleTail, UniformSamples,
};
pub use sinc::{
    boas_coefficient, coefficient_table, sinc, sinc_derivative, zero_sum_residual, CoeffTable,
    Parity,
};
pub use truncation::{Estimate, Truncation, MAX_HALF_WIDTH};
