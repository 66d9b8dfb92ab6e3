//! Exact Janet-like Gröbner bases, normal forms and standard bases for
//! ideals of difference polynomials.

pub mod applications;
pub mod coeff;
pub mod corpus;
pub mod division;
pub mod engine;
pub mod error;
pub mod io;
pub mod linpoly;
pub mod nonlinear;
pub mod ring;

pub use applications::{
    comp_cond, cone_decomposition, hilbert_series, residue_class_basis, CompatibilityConditions, Cone, ConeDecomposition,
    HilbertSeries, QuotientRelation, RelationStore, ShiftConstraint,
};
pub use coeff::{MultiPoly, RationalFunction};
pub use division::{DifferencePower, DivisionKind, DivisionMeta, JanetTree};
pub use engine::{
    buchberger_oracle, extract_reduced_gb, j_normal_form, janet_like_basis, reduce_groebner, Cofactors, CompletionOptions,
    CompletionStats, JanetBasis, TraceEvent,
};
pub use error::{Error, Result};
pub use io::{
    flip_direction, format_coeff, format_diffpoly, format_linear, format_monomial, format_shift_op, format_term, parse_coefficient, parse_linear,
    parse_linear_system, parse_poly, parse_system, pol2shift, pol2shift_grouped, shift2pol, ParsedSystem,
};
pub use linpoly::LinearPoly;
pub use nonlinear::{
    admissible_compare, interreduce, monomial_divides, s_polynomials, standard_basis, CompletionStatus, DiffPoly,
    DifferenceMonomial, SPolyPair, StandardBasis,
};
pub use ring::{ExponentVector, MonomialOrder, Priority, Ranking, Ring, RingSignature, ShiftDirection, Term};
