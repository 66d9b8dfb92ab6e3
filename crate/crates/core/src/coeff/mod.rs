//! The coefficient field: exact rational functions in the index variables
//! and the shift-invariant parameters.

mod gcd;
mod multipoly;
mod ratfun;

pub use gcd::{content_in, gcd};
pub use multipoly::{Mono, MultiPoly};
pub use ratfun::RationalFunction;

use crate::ring::{ExponentVector, ShiftDirection};

/// Field operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(
    a: &RationalFunction,
    b: &RationalFunction,
    op: FieldOp,
) -> crate::Result<RationalFunction> {
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b)?,
    })
}

/// `θ_i` acting on a coefficient: substitutes `x_i ↦ x_i ± 1`.
pub fn shift_coeff(index: usize, c: &RationalFunction, direction: ShiftDirection) -> RationalFunction {
    c.shift_var(index, direction.sign())
}

/// `θ^β` acting on a coefficient.
pub fn shift_coeff_by(beta: &ExponentVector, c: &RationalFunction, direction: ShiftDirection) -> RationalFunction {
    if c.is_constant() {
        return c.clone();
    }
    let mut out = c.clone();
    for (i, b) in beta.iter().enumerate() {
        if b != 0 {
            out = out.shift_var(i, direction.sign() * b as i64);
        }
    }
    out
}
