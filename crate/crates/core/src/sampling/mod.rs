//! Reconstruction of bandlimited functions from uniform samples.

mod fejer;
mod function;
mod reconstruct;
mod samples;

pub use fejer::{fejer_kernel, fejer_regularize, Quadrature, FEJER_MOMENT, FEJER_NORMALIZATION};
pub use function::{make_reference, BandlimitedFn, Decay, Handle, Reference};
pub use reconstruct::{
    poisson_residual, riesz_trig_derivative, valiron_tschakaloff_eval, wks_eval, ComplexEstimate,
};
pub use samples::{SampleSidecar, SampleTail, UniformSamples};
