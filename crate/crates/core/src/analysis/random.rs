use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratlinalg::{int, MatrixSequence, Rational, RationalMatrix};
use num_traits::{One, Signed};

/// Independent stream for trial `trial` of a run seeded with `seed`.
/// Results never depend on the order trials are executed in.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Random stochastic matrix consistent with `g`, diagonal at least `min_diagonal`.
///
/// Each permitted in-neighbor gets a positive weight with probability 1/2.
pub fn random_consistent_matrix<R: Rng + ?Sized>(
    g: &Graph,
    rng: &mut R,
    min_diagonal: &Rational,
) -> Result<RationalMatrix> {
    if !min_diagonal.is_positive() || *min_diagonal >= Rational::one() {
        return Err(Error::Precondition(format!(
            "min_diagonal must lie in (0,1), got {min_diagonal}"
        )));
    }
    let n = g.n();
    let spread = Rational::one() - min_diagonal;
    let mut a = RationalMatrix::zeros(n);
    for i in 1..=n {
        let own: i64 = rng.gen_range(1..=10);
        let mut picked: Vec<(usize, i64)> = Vec::new();
        for j in g.in_neighbors(i) {
            if rng.gen_bool(0.5) {
                picked.push((j, rng.gen_range(1..=10)));
            }
        }
        let total = int(own + picked.iter().map(|(_, w)| w).sum::<i64>());
        a.set(i - 1, i - 1, min_diagonal + &spread * int(own) / &total);
        for (j, w) in picked {
            a.set(i - 1, j - 1, &spread * int(w) / &total);
        }
    }
    Ok(a)
}

pub fn random_consistent_sequence<R: Rng + ?Sized>(
    g: &Graph,
    rng: &mut R,
    len: usize,
    min_diagonal: &Rational,
) -> Result<MatrixSequence> {
    let matrices = (0..len)
        .map(|_| random_consistent_matrix(g, rng, min_diagonal))
        .collect::<Result<Vec<_>>>()?;
    MatrixSequence::new(g.n(), matrices)
}
