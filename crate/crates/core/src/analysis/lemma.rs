use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::generators::directed_cycle;
use crate::ratlinalg::{first_inconsistency, has_positive_diagonal, is_stochastic};
use crate::ratlinalg::{RationalMatrix, RationalVector};

/// Some cyclically consecutive pair `x_i, x_{i+1}` with both `>= 0` or both `<= 0`.
/// Zero counts as either sign.
pub fn has_same_sign_pair(x: &RationalVector) -> bool {
    let n = x.len();
    (0..n).any(|i| {
        let (a, b) = (&x[i], &x[(i + 1) % n]);
        (!a.is_negative() && !b.is_negative()) || (!a.is_positive() && !b.is_positive())
    })
}

/// On the even directed cycle `C_n`, a same-sign consecutive pair in `x`
/// survives multiplication by a positive-diagonal stochastic `A` consistent
/// with the cycle. Returns whether `A x` has such a pair; always true when
/// the preconditions hold.
pub fn check_sign_lemma(a: &RationalMatrix, x: &RationalVector, n_even: usize) -> Result<bool> {
    if n_even < 2 || !n_even.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "cycle length {n_even} is not even"
        )));
    }
    if a.order() != n_even || x.len() != n_even {
        return Err(Error::DimensionMismatch {
            left: n_even,
            right: a.order().max(x.len()),
        });
    }
    if !is_stochastic(a) || !has_positive_diagonal(a) {
        return Err(Error::Precondition(
            "A must be stochastic with positive diagonal".into(),
        ));
    }
    if let Some((i, j)) = first_inconsistency(a, &directed_cycle(n_even))? {
        return Err(Error::Precondition(format!(
            "A entry ({},{}) is not permitted by the cycle",
            i + 1,
            j + 1
        )));
    }
    if !has_same_sign_pair(x) {
        return Err(Error::Precondition(
            "x has no consecutive same-sign pair".into(),
        ));
    }
    Ok(has_same_sign_pair(&a.apply(x)?))
}
