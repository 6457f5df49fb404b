//! Reduction of elliptic curves, Kummer surfaces of products and
//! Shioda-Inose K3 pencils over p-adic fields with `p >= 5`.

pub mod arith;
pub mod bounds;
pub mod elliptic;
pub mod error;
pub mod kodaira;
pub mod kummer;
pub mod lattice;
pub mod padic;
pub mod pencil;
pub mod poly;
pub mod sandwich;
pub mod selftest;
pub mod symbolic;

pub use arith::{format_rational, parse_rational, Rational};
pub use bounds::{gl_order, si_composite_bound, torsion_bound, CompositeBound};
pub use elliptic::{
    curve_with_j, minimal_model, quadratic_twist, reduction_type, two_torsion_ramification, CubicFiber,
    ReductionReport, SingularFiber, TwistClass, WeierstrassCurve,
};
pub use error::{Error, Result};
pub use kodaira::{classify_from_invariants, euler_number, recognize_config, KodairaType, LocalInvariants};
pub use kummer::{
    d_infinity, d_zero, kummer_config, kummer_reduction_decision, validate_fibration, FibrationReport, KummerOutcome,
    KummerVerdict, MatchedTwist,
};
pub use lattice::{pair, CurveConfig, DivisorClass};
pub use padic::{
    splitting_ramification_cubic, ExtensionDescriptor, FieldElem, LocalField, PadicNumber, PrecisionPolicy, SqrtClass,
};
pub use pencil::{
    euler_sum, fiber_at, fiber_multiset, recognize_and_normalize_si, singular_fibers, Place, SIPencil, SurfacePencil,
};
pub use poly::RatPoly;
pub use sandwich::{
    fixed_points, inose_pencil, involution_fixed_fibers, kummer_transform, ramification_index, recover_j_pair,
    si_verdict, InvolutionData, JPair, KummerSide, RamificationCertificate, SIVerdict,
};
