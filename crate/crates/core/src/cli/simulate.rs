use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlinalg::{MatrixSequence, RationalVector};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Approximate { tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum States {
    Exact(Vec<RationalVector>),
    Approximate(Vec<Vec<f64>>),
}

impl States {
    pub fn len(&self) -> usize {
        match self {
            States::Exact(s) => s.len(),
            States::Approximate(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `x(0), ..., x(T)` of `x(t) = A_t x(t-1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub mode: &'static str,
    pub states: States,
    /// Earliest `t` with a constant state.
    pub consensus_at: Option<usize>,
}

pub fn simulate(seq: &MatrixSequence, x0: &RationalVector, mode: Mode) -> Result<Trajectory> {
    if x0.len() != seq.order() {
        return Err(Error::DimensionMismatch {
            left: seq.order(),
            right: x0.len(),
        });
    }
    match mode {
        Mode::Exact => {
            let mut states = vec![x0.clone()];
            for a in seq.matrices() {
                states.push(a.apply(states.last().unwrap())?);
            }
            let consensus_at = states.iter().position(RationalVector::is_constant);
            Ok(Trajectory {
                mode: "exact",
                states: States::Exact(states),
                consensus_at,
            })
        }
        Mode::Approximate { tolerance } => {
            let to_f = |r: &crate::ratlinalg::Rational| r.to_f64().unwrap_or(f64::NAN);
            let mut states: Vec<Vec<f64>> = vec![x0.entries().iter().map(to_f).collect()];
            for a in seq.matrices() {
                let x = states.last().unwrap();
                let y = a
                    .rows()
                    .map(|row| row.iter().zip(x).map(|(w, v)| to_f(w) * v).sum())
                    .collect();
                states.push(y);
            }
            let consensus_at = states.iter().position(|s| spread(s) < tolerance);
            Ok(Trajectory {
                mode: "approximate",
                states: States::Approximate(states),
                consensus_at,
            })
        }
    }
}

fn spread(x: &[f64]) -> f64 {
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::fixture::fixture_sequence;
    use crate::ratlinalg::{int, rat};

    #[test]
    fn fixture_from_unit_vector() {
        let x0 = RationalVector::from_ints(&[1, 0, 0, 0]);
        let tr = simulate(&fixture_sequence(), &x0, Mode::Exact).unwrap();
        let States::Exact(states) = &tr.states else {
            panic!()
        };
        assert_eq!(states.len(), 5);
        assert_eq!(states[4], RationalVector::constant(4, rat(1, 4)));
        assert_eq!(tr.consensus_at, Some(4));
    }

    #[test]
    fn constants_are_fixed() {
        let x0 = RationalVector::constant(4, rat(-7, 3));
        let tr = simulate(&fixture_sequence(), &x0, Mode::Exact).unwrap();
        let States::Exact(states) = &tr.states else {
            panic!()
        };
        assert!(states.iter().all(|s| *s == x0));
        assert_eq!(tr.consensus_at, Some(0));
    }

    #[test]
    fn empty_sequence() {
        let x0 = RationalVector::new(vec![int(1), int(2)]);
        let tr = simulate(&MatrixSequence::empty(2), &x0, Mode::Exact).unwrap();
        assert_eq!(tr.states, States::Exact(vec![x0]));
        assert_eq!(tr.consensus_at, None);
    }

    #[test]
    fn approximate_tracks_exact() {
        let x0 = RationalVector::new(vec![rat(1, 3), int(0), rat(-2, 7), int(5)]);
        let exact = simulate(&fixture_sequence(), &x0, Mode::Exact).unwrap();
        let approx = simulate(
            &fixture_sequence(),
            &x0,
            Mode::Approximate {
                tolerance: DEFAULT_TOLERANCE,
            },
        )
        .unwrap();
        let (States::Exact(e), States::Approximate(a)) = (&exact.states, &approx.states) else {
            panic!()
        };
        for (es, as_) in e.iter().zip(a) {
            for (x, y) in es.entries().iter().zip(as_) {
                assert!((x.to_f64().unwrap() - y).abs() < 1e-9);
            }
        }
        assert_eq!(approx.consensus_at, Some(4));
    }

    #[test]
    fn dimension_mismatch() {
        let x0 = RationalVector::from_ints(&[1, 0]);
        assert!(simulate(&fixture_sequence(), &x0, Mode::Exact).is_err());
    }
}
