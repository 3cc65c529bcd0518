//! Exact linear algebra over the rationals: rank, kernels, and linear
//! solves by fraction-exact Gaussian elimination.

use super::{ExactError, Rational};
use num_traits::{One, Zero};

/// Reduced row echelon form; returns (rref, pivot column per pivot row).
fn rref(m: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &a[r][j] * &f;
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

/// Rank of a rational matrix by exact elimination.
pub fn rank_exact(m: &[Vec<Rational>]) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel {x : Mx = 0} of a rational matrix.
///
/// For an m-by-n matrix the basis has n - rank vectors; an empty result
/// means the kernel is trivial.
pub fn kernel_basis(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[pr][fc].clone();
            }
            v
        })
        .collect()
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// No solution.
    Inconsistent,
    /// Infinitely many solutions: one particular solution plus a kernel
    /// basis spanning the solution set's directions.
    Underdetermined {
        particular: Vec<Rational>,
        nullspace: Vec<Vec<Rational>>,
    },
}

/// Solves Mx = b exactly. The right-hand side length must match the row
/// count.
pub fn solve_exact(m: &[Vec<Rational>], b: &[Rational]) -> Result<SolveOutcome, ExactError> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if b.len() != rows {
        return Err(ExactError::DimensionMismatch {
            expected: rows,
            got: b.len(),
        });
    }
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (a, pivots) = rref(&augmented);
    if pivots.contains(&cols) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); cols];
    for (pr, &pc) in pivots.iter().enumerate() {
        particular[pc] = a[pr][cols].clone();
    }
    if pivots.len() == cols {
        Ok(SolveOutcome::Unique(particular))
    } else {
        let coeff: Vec<Vec<Rational>> = m.to_vec();
        Ok(SolveOutcome::Underdetermined {
            particular,
            nullspace: kernel_basis(&coeff),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn q(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn unique_solution() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(3), q(0)];
        assert_eq!(
            solve_exact(&m, &b),
            Ok(SolveOutcome::Unique(vec![rat_int(1), rat_int(1)]))
        );
    }

    #[test]
    fn inconsistent_system() {
        let m = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let b = vec![q(1), q(3)];
        assert_eq!(solve_exact(&m, &b), Ok(SolveOutcome::Inconsistent));
    }

    #[test]
    fn underdetermined_solution_checks_out() {
        let m = vec![vec![q(1), q(2), q(-1)]];
        let b = vec![q(4)];
        match solve_exact(&m, &b).expect("conformable") {
            SolveOutcome::Underdetermined {
                particular,
                nullspace,
            } => {
                let dot = |v: &[Rational]| {
                    v.iter()
                        .zip(m[0].iter())
                        .map(|(x, c)| x * c)
                        .fold(Rational::zero(), |s, t| s + t)
                };
                assert_eq!(dot(&particular), q(4));
                assert_eq!(nullspace.len(), 2);
                for v in &nullspace {
                    assert_eq!(dot(v), Rational::zero());
                }
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn rhs_length_mismatch() {
        let m = vec![vec![q(1)]];
        assert_eq!(
            solve_exact(&m, &[]),
            Err(ExactError::DimensionMismatch {
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ];
        assert_eq!(rank_exact(&m), 2);
        let kernel = kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        for row in &m {
            let dot: Rational = row
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |s, t| s + t);
            assert!(dot.is_zero());
        }
        assert_eq!(rank_exact(&[vec![rat(1, 2)]]), 1);
    }
}
