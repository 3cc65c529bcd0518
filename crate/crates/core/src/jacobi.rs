//! Radial determinant engine: the perturbation matrix B(r) attached to a
//! symmetric shape matrix, its determinant D(r) over the sine/cosine atom
//! algebra, graded coefficient stacks, the first-order recurrence that
//! drives them, and the numeric parallel-flow shape operator -B'B^-1.
//!
//! # Design Notes
//!
//! B(r) is (n-1)x(n-1) for n = n1 + n2. Its first row is affine in r, rows
//! 2..n1 oscillate with the first parameter, and the remaining rows with
//! the second; every entry solves f'' = tau f with f(0) = delta_ij and
//! f'(0) = -a_ij. The determinant D(r) then lives in the graded part of
//! the atom algebra picked out by `project_graded`, and its coefficient
//! stack P satisfies P_{k+1} = Q P_k where Q is the doubled two-factor Kac
//! matrix (both parameters live) or the enlarged single-parameter Kac
//! matrix (first parameter zero).
//!
//! Symbolic determinants use the memoized Laplace expansion: the atom
//! algebra has no exact division, so fraction-free elimination does not
//! apply, and desk-scale orders keep the minor table small. A cap on
//! n1 + n2 guards fully symbolic inputs.

use crate::csbasis::{
    cs_derivative, cs_eval, cs_value_at_zero, project_graded, reconstruct_graded, Atom, CSPoly,
    CsError, CsMode,
};
use crate::exact::sample;
use crate::exact::{
    det_laplace_generic, matrix_times_column, AssignmentF64, MultiPoly, PolyMatrix, Rational,
};
use crate::kac::{self, KacError};
use std::fmt;

/// Largest n1 + n2 admitted for fully symbolic determinant expansion.
pub const DEFAULT_SYMBOLIC_CAP: usize = 7;

/// Tolerance below which a numeric determinant counts as a focal point.
pub const SINGULARITY_GUARD: f64 = 1e-12;

/// Errors raised by the radial determinant layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JacobiError {
    /// A factor dimension was outside the supported range.
    #[error("bad dimension: {0}")]
    BadDimension(String),
    /// A shape matrix input was not symmetric.
    #[error("input matrix is not symmetric at ({row}, {col})")]
    AsymmetricInput { row: usize, col: usize },
    /// A fully symbolic expansion was requested above the configured cap.
    #[error("symbolic expansion with n1 + n2 = {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    /// The parameter pattern has no supported expansion mode.
    #[error("unsupported parameter pattern: {0}")]
    UnsupportedMode(String),
    /// The perturbation matrix is numerically singular (focal point).
    #[error("matrix is numerically singular at r = {r} (det = {det:e})")]
    SingularB { r: f64, det: f64 },
    /// An error from the function-algebra layer.
    #[error(transparent)]
    Algebra(#[from] CsError),
    /// An error from the Kac-matrix layer.
    #[error(transparent)]
    Kac(#[from] KacError),
}

/// Which grading the determinant expansion lives in: both parameters live,
/// or the first parameter identically zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionMode {
    /// Both parameters nonzero; stack length 2 n1 n2.
    Mixed,
    /// First parameter identically zero; stack length (n1 + 1) n2.
    Flat,
}

impl ExpansionMode {
    /// Mode implied by the first parameter: flat exactly when it is the
    /// zero polynomial.
    pub fn of(tau1: &MultiPoly) -> ExpansionMode {
        if tau1.is_zero() {
            ExpansionMode::Flat
        } else {
            ExpansionMode::Mixed
        }
    }

    /// The matching degeneracy mode of the atom algebra.
    pub fn cs_mode(self) -> CsMode {
        match self {
            ExpansionMode::Mixed => CsMode::mixed(),
            ExpansionMode::Flat => CsMode::flat_first(),
        }
    }

    /// Length of the coefficient stack for factor dimensions (n1, n2).
    pub fn stack_len(self, n1: usize, n2: usize) -> usize {
        match self {
            ExpansionMode::Mixed => 2 * n1 * n2,
            ExpansionMode::Flat => (n1 + 1) * n2,
        }
    }
}

impl fmt::Display for ExpansionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpansionMode::Mixed => "mixed",
            ExpansionMode::Flat => "flat",
        })
    }
}

/// Symmetric (n-1)x(n-1) shape matrix, n = n1 + n2, with polynomial
/// entries. Row and column 1 carry the tangent direction of the profile
/// curve; rows 2..n1 the first factor; the rest the second factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeMatrix {
    n1: usize,
    n2: usize,
    mat: PolyMatrix,
}

impl ShapeMatrix {
    fn check_dims(n1: usize, n2: usize) -> Result<(), JacobiError> {
        if n1 < 2 || n2 < 2 {
            return Err(JacobiError::BadDimension(format!(
                "factor dimensions must be at least 2, got ({n1}, {n2})"
            )));
        }
        Ok(())
    }

    /// Fully symbolic symmetric matrix with entries a_ij (1-based, i <= j
    /// canonical).
    pub fn symbolic(n1: usize, n2: usize) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        let mat = PolyMatrix::from_fn(order, order, |i, j| {
            let (lo, hi) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
            MultiPoly::var(&format!("a{lo}{hi}"))
        });
        Ok(ShapeMatrix { n1, n2, mat })
    }

    /// Symbolic matrix whose first row and column vanish; the remaining
    /// block stays fully symbolic. This is the constant-angle frame used
    /// by the norm identities.
    pub fn symbolic_zero_first(n1: usize, n2: usize) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        let mat = PolyMatrix::from_fn(order, order, |i, j| {
            if i == 0 || j == 0 {
                MultiPoly::zero()
            } else {
                let (lo, hi) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
                MultiPoly::var(&format!("a{lo}{hi}"))
            }
        });
        Ok(ShapeMatrix { n1, n2, mat })
    }

    /// The zero matrix.
    pub fn zero(n1: usize, n2: usize) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        Ok(ShapeMatrix {
            n1,
            n2,
            mat: PolyMatrix::zero(order, order),
        })
    }

    /// Builds from rational rows after checking symmetry.
    pub fn from_rows(
        n1: usize,
        n2: usize,
        rows: &[Vec<Rational>],
    ) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(JacobiError::BadDimension(format!(
                "expected a {order}x{order} matrix"
            )));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if rows[i][j] != rows[j][i] {
                    return Err(JacobiError::AsymmetricInput { row: i, col: j });
                }
            }
        }
        let mat = PolyMatrix::from_fn(order, order, |i, j| {
            MultiPoly::constant(rows[i][j].clone())
        });
        Ok(ShapeMatrix { n1, n2, mat })
    }

    /// Builds from an arbitrary polynomial matrix after checking symmetry.
    pub fn from_matrix(n1: usize, n2: usize, mat: PolyMatrix) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        if mat.rows() != order || mat.cols() != order {
            return Err(JacobiError::BadDimension(format!(
                "expected a {order}x{order} matrix, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if mat.at(i, j) != mat.at(j, i) {
                    return Err(JacobiError::AsymmetricInput { row: i, col: j });
                }
            }
        }
        Ok(ShapeMatrix { n1, n2, mat })
    }

    /// Random symmetric rational matrix from a seeded generator.
    pub fn random_symmetric(
        n1: usize,
        n2: usize,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Result<ShapeMatrix, JacobiError> {
        ShapeMatrix::check_dims(n1, n2)?;
        let order = n1 + n2 - 1;
        let mut rows = vec![vec![Rational::from_integer(0.into()); order]; order];
        for i in 0..order {
            for j in i..order {
                let v = sample::small_rational(rng);
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        ShapeMatrix::from_rows(n1, n2, &rows)
    }

    /// First factor dimension.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Second factor dimension.
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Order of the matrix, n1 + n2 - 1.
    pub fn order(&self) -> usize {
        self.n1 + self.n2 - 1
    }

    /// The underlying symmetric polynomial matrix.
    pub fn matrix(&self) -> &PolyMatrix {
        &self.mat
    }

    /// Entry at 0-based (i, j).
    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        self.mat.at(i, j)
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> MultiPoly {
        self.mat.trace()
    }

    /// True when any entry is a non-constant polynomial.
    pub fn is_symbolic(&self) -> bool {
        (0..self.order()).any(|i| {
            (0..self.order()).any(|j| self.mat.at(i, j).as_constant().is_none())
        })
    }
}

/// Graded coefficient stack of a determinant expansion derivative.
///
/// Mixed mode stacks the r^0 coefficients first (first-slot sine power
/// major, second minor) and then the r^1 coefficients; flat mode stacks by
/// (r power, second sine power).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    /// Grading the stack lives in.
    pub mode: ExpansionMode,
    /// First factor dimension.
    pub n1: usize,
    /// Second factor dimension.
    pub n2: usize,
    /// Stacked coefficients, length `mode.stack_len(n1, n2)`.
    pub data: Vec<MultiPoly>,
}

impl CoeffVector {
    /// Number of stacked coefficients.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// True when the stack is empty (never for well-formed inputs).
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// The r^0 coefficient at sine powers (u, v) in mixed mode, or the
    /// coefficient at (r power u, sine power v) in flat mode.
    pub fn alpha(&self, u: usize, v: usize) -> &MultiPoly {
        match self.mode {
            ExpansionMode::Mixed => {
                assert!(u < self.n1 && v < self.n2, "index out of range");
                &self.data[u * self.n2 + v]
            }
            ExpansionMode::Flat => {
                assert!(u <= self.n1 && v < self.n2, "index out of range");
                &self.data[u * self.n2 + v]
            }
        }
    }

    /// The r^1 coefficient at sine powers (u, v); mixed mode only.
    pub fn beta(&self, u: usize, v: usize) -> &MultiPoly {
        assert!(
            self.mode == ExpansionMode::Mixed,
            "flat stacks carry no separate radial block"
        );
        assert!(u < self.n1 && v < self.n2, "index out of range");
        &self.data[self.n1 * self.n2 + u * self.n2 + v]
    }
}

/// Outcome of the initial-value checks on a perturbation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvpCheck {
    /// True when every entry satisfies its oscillator equation and initial
    /// values.
    pub pass: bool,
    /// First failing entry, if any.
    pub witness: Option<IvpWitness>,
}

/// A failing entry of the initial-value checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvpWitness {
    /// 0-based row of the offending entry.
    pub row: usize,
    /// 0-based column of the offending entry.
    pub col: usize,
    /// Which relation failed.
    pub relation: String,
}

/// Outcome of the coefficient recurrence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCheck {
    /// True when differentiation and the matrix action agree everywhere.
    pub pass: bool,
    /// First failing (derivative order, stack slot), if any.
    pub failure: Option<(usize, usize)>,
}

/// Numeric state of the parallel flow at radial distance r.
#[derive(Clone, Debug)]
pub struct ParallelState {
    /// Radial distance.
    pub r: f64,
    /// Perturbation matrix B(r).
    pub b: Vec<Vec<f64>>,
    /// Entrywise derivative B'(r).
    pub b_prime: Vec<Vec<f64>>,
    /// Shape operator -B'(r) B(r)^-1 of the parallel hypersurface.
    pub a_r: Vec<Vec<f64>>,
    /// Mean curvature trace(a_r).
    pub h_r: f64,
    /// Determinant value D(r).
    pub d_r: f64,
    /// Derivative value D'(r).
    pub d_prime_r: f64,
}

fn row_parameter(i: usize, n1: usize, tau1: &MultiPoly, tau2: &MultiPoly) -> MultiPoly {
    if i == 0 {
        MultiPoly::zero()
    } else if i < n1 {
        tau1.clone()
    } else {
        tau2.clone()
    }
}

/// Builds the perturbation matrix B(r) for a shape matrix and parameter
/// pair. The first row is affine in r; rows 2..n1 combine the first
/// cosine/sine pair (or stay affine when the first parameter is zero);
/// the remaining rows combine the second pair.
pub fn build_b(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
) -> Result<Vec<Vec<CSPoly>>, JacobiError> {
    if tau2.is_zero() {
        return Err(JacobiError::UnsupportedMode(
            "second parameter must not be identically zero".to_owned(),
        ));
    }
    let mode = ExpansionMode::of(tau1).cs_mode();
    let order = a.order();
    let n1 = a.n1();
    let radial = Atom {
        r_pow: 1,
        ..Atom::default()
    };
    let (c1, s1) = (
        Atom {
            c1_pow: 1,
            ..Atom::default()
        },
        Atom {
            s1_pow: 1,
            ..Atom::default()
        },
    );
    let (c2, s2) = (
        Atom {
            c2_pow: 1,
            ..Atom::default()
        },
        Atom {
            s2_pow: 1,
            ..Atom::default()
        },
    );
    let mut out = Vec::with_capacity(order);
    for i in 0..order {
        let (cos_atom, sin_atom) = if i == 0 {
            (Atom::unit(), radial)
        } else if i < n1 {
            if mode.tau1_degenerate {
                (Atom::unit(), radial)
            } else {
                (c1, s1)
            }
        } else {
            (c2, s2)
        };
        let mut row = Vec::with_capacity(order);
        for j in 0..order {
            let mut entry = CSPoly::zero(mode);
            if i == j {
                entry = entry.add(
                    &CSPoly::term(mode, cos_atom, MultiPoly::one()).expect("atom legal for mode"),
                );
            }
            let a_ij = a.entry(i, j);
            if !a_ij.is_zero() {
                entry = entry.add(
                    &CSPoly::term(mode, sin_atom, a_ij.neg()).expect("atom legal for mode"),
                );
            }
            row.push(entry);
        }
        out.push(row);
    }
    Ok(out)
}

/// Checks that every entry of a prebuilt perturbation matrix satisfies its
/// oscillator equation f'' = tau f and the initial values f(0) = delta_ij,
/// f'(0) = -a_ij.
pub fn ivp_check_matrix(
    b: &[Vec<CSPoly>],
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
) -> IvpCheck {
    let order = a.order();
    for (i, row) in b.iter().enumerate() {
        let tau = row_parameter(i, a.n1(), tau1, tau2);
        for (j, f) in row.iter().enumerate() {
            let second = cs_derivative(&cs_derivative(f, tau1, tau2), tau1, tau2);
            if second != f.scale(&tau) {
                return IvpCheck {
                    pass: false,
                    witness: Some(IvpWitness {
                        row: i,
                        col: j,
                        relation: "second derivative".to_owned(),
                    }),
                };
            }
            let delta = if i == j {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
            if cs_value_at_zero(f) != delta {
                return IvpCheck {
                    pass: false,
                    witness: Some(IvpWitness {
                        row: i,
                        col: j,
                        relation: "initial value".to_owned(),
                    }),
                };
            }
            let first = cs_derivative(f, tau1, tau2);
            if cs_value_at_zero(&first) != a.entry(i, j).neg() {
                return IvpCheck {
                    pass: false,
                    witness: Some(IvpWitness {
                        row: i,
                        col: j,
                        relation: "initial slope".to_owned(),
                    }),
                };
            }
        }
    }
    debug_assert_eq!(b.len(), order);
    IvpCheck {
        pass: true,
        witness: None,
    }
}

/// Builds B(r) and runs the initial-value checks on it.
pub fn ivp_check(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
) -> Result<IvpCheck, JacobiError> {
    let b = build_b(a, tau1, tau2)?;
    Ok(ivp_check_matrix(&b, a, tau1, tau2))
}

/// Determinant of B(r) as an element of the atom algebra. Fully symbolic
/// inputs are capped at `cap` total dimension; rational inputs are not.
pub fn expand_d_element(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
    cap: usize,
) -> Result<CSPoly, JacobiError> {
    let size = a.n1() + a.n2();
    if a.is_symbolic() && size > cap {
        return Err(JacobiError::CapExceeded { size, cap });
    }
    let b = build_b(a, tau1, tau2)?;
    Ok(det_laplace_generic(a.order(), &|i, j| b[i][j].clone()))
}

/// Graded coefficient stack of det B(r): the order-0 stack of the
/// expansion.
pub fn expand_d(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
    cap: usize,
) -> Result<CoeffVector, JacobiError> {
    let det = expand_d_element(a, tau1, tau2, cap)?;
    let data = project_graded(&det, a.n1(), a.n2())?;
    Ok(CoeffVector {
        mode: ExpansionMode::of(tau1),
        n1: a.n1(),
        n2: a.n2(),
        data,
    })
}

/// Next coefficient stack by symbolic redifferentiation: reconstructs the
/// algebra element, differentiates, and re-projects. This is the oracle
/// the matrix recurrence is checked against.
pub fn coeff_derivative(
    p: &CoeffVector,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
) -> Result<CoeffVector, JacobiError> {
    let f = reconstruct_graded(&p.data, p.n1, p.n2, p.mode.cs_mode())?;
    let df = cs_derivative(&f, tau1, tau2);
    let data = project_graded(&df, p.n1, p.n2)?;
    Ok(CoeffVector {
        mode: p.mode,
        n1: p.n1,
        n2: p.n2,
        data,
    })
}

/// The companion matrix of the coefficient recurrence: the doubled
/// two-factor Kac matrix of order 2 n1 n2 when both parameters live, or
/// the plain two-factor matrix K(n1+1, n2, 0, tau2) of order (n1+1) n2
/// when the first parameter is zero.
pub fn build_q(
    n1: usize,
    n2: usize,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
) -> Result<PolyMatrix, JacobiError> {
    if n1 < 2 || n2 < 2 {
        return Err(JacobiError::BadDimension(format!(
            "factor dimensions must be at least 2, got ({n1}, {n2})"
        )));
    }
    if tau2.is_zero() {
        return Err(JacobiError::UnsupportedMode(
            "second parameter must not be identically zero".to_owned(),
        ));
    }
    let q = match ExpansionMode::of(tau1) {
        ExpansionMode::Mixed => kac::double_block(n1, n2, tau1, tau2)?,
        ExpansionMode::Flat => kac::build_kac_second(n1 + 1, n2, &MultiPoly::zero(), tau2)?,
    };
    Ok(q)
}

/// Verifies that redifferentiation agrees with the matrix action for all
/// derivative orders up to k_max: each next stack equals Q times the
/// current one, slot by slot, as exact polynomials.
pub fn recurrence_check(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
    k_max: usize,
    cap: usize,
) -> Result<RecurrenceCheck, JacobiError> {
    let q = build_q(a.n1(), a.n2(), tau1, tau2)?;
    let mut p = expand_d(a, tau1, tau2, cap)?;
    for k in 0..=k_max {
        let direct = coeff_derivative(&p, tau1, tau2)?;
        let via_q = matrix_times_column(&q, &p.data);
        for slot in 0..direct.data.len() {
            if direct.data[slot] != via_q[slot] {
                return Ok(RecurrenceCheck {
                    pass: false,
                    failure: Some((k, slot)),
                });
            }
        }
        p = direct;
    }
    Ok(RecurrenceCheck {
        pass: true,
        failure: None,
    })
}

fn invert_with_det(m: &[Vec<f64>]) -> (Option<Vec<Vec<f64>>>, f64) {
    let n = m.len();
    let mut aug: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| {
                aug[x][col]
                    .abs()
                    .partial_cmp(&aug[y][col].abs())
                    .expect("finite pivots")
            })
            .expect("nonempty pivot range");
        let pivot = aug[pivot_row][col];
        if pivot.abs() < 1e-300 {
            return (None, 0.0);
        }
        if pivot_row != col {
            aug.swap(pivot_row, col);
            det = -det;
        }
        det *= pivot;
        let inv_p = 1.0 / pivot;
        for x in aug[col].iter_mut() {
            *x *= inv_p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = aug[i][col];
            if f != 0.0 {
                for j in 0..2 * n {
                    aug[i][j] -= f * aug[col][j];
                }
            }
        }
    }
    let inv = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    (Some(inv), det)
}

/// Numeric parallel-flow state at radial distance r: B, B', the shape
/// operator -B'B^-1, its trace, and the determinant values D(r), D'(r).
/// The shape matrix must have constant entries.
pub fn parallel_state(
    a: &ShapeMatrix,
    tau1: f64,
    tau2: f64,
    r: f64,
) -> Result<ParallelState, JacobiError> {
    let t1 = MultiPoly::var("tau1");
    let t2 = MultiPoly::var("tau2");
    let b_sym = build_b(a, &t1, &t2)?;
    let order = a.order();
    let at = AssignmentF64::new().set("tau1", tau1).set("tau2", tau2);
    let mut b = vec![vec![0.0; order]; order];
    let mut b_prime = vec![vec![0.0; order]; order];
    for i in 0..order {
        for j in 0..order {
            b[i][j] = cs_eval(&b_sym[i][j], r, tau1, tau2, &at)?;
            let df = cs_derivative(&b_sym[i][j], &t1, &t2);
            b_prime[i][j] = cs_eval(&df, r, tau1, tau2, &at)?;
        }
    }
    let d_sym = det_laplace_generic(order, &|i, j| b_sym[i][j].clone());
    let d_r = cs_eval(&d_sym, r, tau1, tau2, &at)?;
    let d_prime_r = cs_eval(&cs_derivative(&d_sym, &t1, &t2), r, tau1, tau2, &at)?;
    let (inv, det) = invert_with_det(&b);
    let inv = match inv {
        Some(inv) if det.abs() > SINGULARITY_GUARD => inv,
        _ => return Err(JacobiError::SingularB { r, det }),
    };
    let mut a_r = vec![vec![0.0; order]; order];
    for i in 0..order {
        for j in 0..order {
            let mut acc = 0.0;
            for (k, inv_row) in inv.iter().enumerate() {
                acc += b_prime[i][k] * inv_row[j];
            }
            a_r[i][j] = -acc;
        }
    }
    let h_r = (0..order).map(|i| a_r[i][i]).sum();
    Ok(ParallelState {
        r,
        b,
        b_prime,
        a_r,
        h_r,
        d_r,
        d_prime_r,
    })
}

/// First-slot values of the derivative stacks, computed by the first-row
/// action of matrix powers and cross-checked against the redifferentiation
/// chain: entry k is the first slot of the order k+1 stack, and entry 0
/// equals minus the trace of the shape matrix.
pub fn dk_sequence(
    a: &ShapeMatrix,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
    k_max: usize,
    cap: usize,
) -> Result<Vec<MultiPoly>, JacobiError> {
    let p0 = expand_d(a, tau1, tau2, cap)?;
    let q = build_q(a.n1(), a.n2(), tau1, tau2)?;
    let rows = kac::first_row_powers(&q, k_max + 1);
    let mut out = Vec::with_capacity(k_max + 1);
    for row in rows.iter().take(k_max + 1) {
        let mut acc = MultiPoly::zero();
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&p0.data[j]));
            }
        }
        out.push(acc);
    }
    let mut p = p0;
    for (k, expected) in out.iter().enumerate() {
        p = coeff_derivative(&p, tau1, tau2)?;
        assert_eq!(
            &p.data[0], expected,
            "power action and redifferentiation disagree at order {k}"
        );
    }
    Ok(out)
}
