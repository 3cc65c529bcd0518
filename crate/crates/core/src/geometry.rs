//! Closed-form differential geometry of product hypersurfaces built from
//! two parallel families coupled by a profile function: principal
//! curvatures, mean curvature, and angle function; the parallel
//! curvature flow in a space form; horospherical configurations; and
//! finite-difference verification of the split-frame trace identities.

use crate::csbasis;

/// Denominators closer to zero than this indicate a focal point of the
/// parallel flow; they are reported as errors, never clamped.
pub const FOCAL_GUARD: f64 = 1e-12;

/// Default central-difference step for numeric derivatives.
pub const CENTRAL_DIFF_STEP: f64 = 1e-5;

/// Deviation bound under which a grid scan reports a quantity constant.
pub const CONSTANCY_TOL: f64 = 1e-12;

/// Errors from the numeric geometry layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    /// The parallel flow reached a focal point: the flow denominator
    /// vanished at the given distance.
    #[error("focal point at distance {t}: flow denominator {denominator:e}")]
    FocalPoint { t: f64, denominator: f64 },
    /// A sampled profile was queried outside its tabulated domain.
    #[error("profile argument {s} outside the tabulated domain [{lo}, {hi}]")]
    DomainExceeded { s: f64, lo: f64, hi: f64 },
    /// Structurally invalid configuration.
    #[error("bad configuration: {0}")]
    BadConfig(String),
}

/// One space-form factor: its sectional curvature, dimension, and the
/// principal curvatures of the base leaf of its parallel family.
#[derive(Debug, Clone)]
pub struct SpaceFormFactor {
    /// Sectional curvature of the factor.
    pub epsilon: f64,
    /// Dimension of the factor, at least two.
    pub dim: usize,
    /// Principal curvatures of the base leaf, one per tangent direction.
    pub base_curvatures: Vec<f64>,
}

impl SpaceFormFactor {
    /// Builds a factor, checking the dimension and curvature count.
    pub fn new(
        epsilon: f64,
        dim: usize,
        base_curvatures: Vec<f64>,
    ) -> Result<SpaceFormFactor, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::BadConfig(format!(
                "factor dimension must be at least 2, got {dim}"
            )));
        }
        if base_curvatures.len() != dim - 1 {
            return Err(GeometryError::BadConfig(format!(
                "expected {} base curvatures, got {}",
                dim - 1,
                base_curvatures.len()
            )));
        }
        Ok(SpaceFormFactor {
            epsilon,
            dim,
            base_curvatures,
        })
    }

    /// Hyperbolic factor whose base leaf is a horosphere: all base
    /// curvatures equal the square root of minus the curvature.
    pub fn horosphere(epsilon: f64, dim: usize) -> Result<SpaceFormFactor, GeometryError> {
        if epsilon >= 0.0 {
            return Err(GeometryError::BadConfig(format!(
                "a horosphere base needs negative curvature, got {epsilon}"
            )));
        }
        SpaceFormFactor::new(epsilon, dim, vec![(-epsilon).sqrt(); dim - 1])
    }

    /// Flat factor whose base leaf is a hyperplane: all base curvatures
    /// vanish.
    pub fn hyperplane(dim: usize) -> Result<SpaceFormFactor, GeometryError> {
        SpaceFormFactor::new(0.0, dim, vec![0.0; dim - 1])
    }

    /// True when the base leaf is the distinguished totally umbilic leaf
    /// of the factor: a horosphere for negative curvature, a hyperplane
    /// for zero curvature.
    pub fn has_umbilic_base(&self) -> bool {
        let expected = if self.epsilon < 0.0 {
            (-self.epsilon).sqrt()
        } else {
            0.0
        };
        self.epsilon <= 0.0
            && self
                .base_curvatures
                .iter()
                .all(|k| (k - expected).abs() <= CONSTANCY_TOL)
    }
}

/// Natural cubic spline through strictly increasing nodes.
#[derive(Debug, Clone)]
struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    fn fit(grid: &[(f64, f64)]) -> Result<CubicSpline, GeometryError> {
        if grid.len() < 4 {
            return Err(GeometryError::BadConfig(format!(
                "a sampled profile needs at least 4 nodes, got {}",
                grid.len()
            )));
        }
        let xs: Vec<f64> = grid.iter().map(|(x, _)| *x).collect();
        let ys: Vec<f64> = grid.iter().map(|(_, y)| *y).collect();
        for w in xs.windows(2) {
            if w[1] <= w[0] {
                return Err(GeometryError::BadConfig(
                    "profile nodes must be strictly increasing".to_owned(),
                ));
            }
        }
        let n = xs.len();
        let mut second = vec![0.0; n];
        let mut scratch = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            scratch[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * scratch[i - 1]) / p;
        }
        for i in (1..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + scratch[i];
        }
        second[0] = 0.0;
        second[n - 1] = 0.0;
        Ok(CubicSpline { xs, ys, second })
    }

    fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().expect("nonempty"))
    }

    fn segment(&self, s: f64) -> Result<usize, GeometryError> {
        let (lo, hi) = self.domain();
        if s < lo || s > hi {
            return Err(GeometryError::DomainExceeded { s, lo, hi });
        }
        let mut i = match self.xs.binary_search_by(|x| x.partial_cmp(&s).expect("finite")) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if i >= self.xs.len() - 1 {
            i = self.xs.len() - 2;
        }
        Ok(i)
    }

    fn value(&self, s: f64) -> Result<f64, GeometryError> {
        let i = self.segment(s)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - s) / h;
        let b = (s - self.xs[i]) / h;
        Ok(a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0)
    }

    fn derivative(&self, s: f64) -> Result<f64, GeometryError> {
        let i = self.segment(s)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - s) / h;
        let b = (s - self.xs[i]) / h;
        Ok((self.ys[i + 1] - self.ys[i]) / h
            + ((3.0 * b * b - 1.0) * self.second[i + 1] - (3.0 * a * a - 1.0) * self.second[i])
                * h
                / 6.0)
    }

    fn second_derivative(&self, s: f64) -> Result<f64, GeometryError> {
        let i = self.segment(s)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - s) / h;
        let b = (s - self.xs[i]) / h;
        Ok(a * self.second[i] + b * self.second[i + 1])
    }
}

/// The profile function coupling the two parallel families: linear with
/// exact derivatives on the whole line, or tabulated and interpolated by
/// a natural cubic spline whose derivatives come from the interpolant
/// and whose domain is the node range.
#[derive(Debug, Clone)]
pub struct PhiSpec {
    kind: PhiKind,
}

#[derive(Debug, Clone)]
enum PhiKind {
    Linear { a: f64 },
    Sampled { spline: CubicSpline },
}

impl PhiSpec {
    /// Linear profile through the origin with the given slope.
    pub fn linear(a: f64) -> PhiSpec {
        PhiSpec {
            kind: PhiKind::Linear { a },
        }
    }

    /// Sampled profile through the given (s, value) nodes.
    pub fn sampled(grid: &[(f64, f64)]) -> Result<PhiSpec, GeometryError> {
        Ok(PhiSpec {
            kind: PhiKind::Sampled {
                spline: CubicSpline::fit(grid)?,
            },
        })
    }

    /// True for the linear kind.
    pub fn is_linear(&self) -> bool {
        matches!(self.kind, PhiKind::Linear { .. })
    }

    /// Profile value at s.
    pub fn value(&self, s: f64) -> Result<f64, GeometryError> {
        match &self.kind {
            PhiKind::Linear { a } => Ok(a * s),
            PhiKind::Sampled { spline } => spline.value(s),
        }
    }

    /// First derivative at s.
    pub fn derivative(&self, s: f64) -> Result<f64, GeometryError> {
        match &self.kind {
            PhiKind::Linear { a } => Ok(*a),
            PhiKind::Sampled { spline } => spline.derivative(s),
        }
    }

    /// Second derivative at s.
    pub fn second_derivative(&self, s: f64) -> Result<f64, GeometryError> {
        match &self.kind {
            PhiKind::Linear { .. } => Ok(0.0),
            PhiKind::Sampled { spline } => spline.second_derivative(s),
        }
    }
}

/// Curvature data of the product hypersurface at one profile parameter.
#[derive(Debug, Clone)]
pub struct CurvatureState {
    /// Profile parameter.
    pub s: f64,
    /// Principal curvature of the profile direction.
    pub k1: f64,
    /// Principal curvatures along the first factor.
    pub k_factor1: Vec<f64>,
    /// Principal curvatures along the second factor.
    pub k_factor2: Vec<f64>,
    /// Mean curvature: the sum of all principal curvatures.
    pub h: f64,
    /// Angle function of the unit normal.
    pub theta: f64,
    /// Speed of the profile curve.
    pub w: f64,
}

/// Hyperbolic sine/cosine pair of the oscillator equation, switching to
/// circular functions for negative parameter and degenerating to (r, 1)
/// at zero. Satisfies c^2 - tau s^2 = 1.
pub fn sc(tau: f64, r: f64) -> (f64, f64) {
    csbasis::sc_value(tau, r)
}

/// Principal curvature of the parallel hypersurface at distance t in a
/// space form of curvature epsilon, starting from curvature kappa0.
///
/// The flow follows the fractional-linear law of the oscillator pair
/// with parameter minus epsilon; a vanishing denominator is a focal
/// point of the starting hypersurface.
pub fn parallel_flow_curvature(kappa0: f64, epsilon: f64, t: f64) -> Result<f64, GeometryError> {
    let tau = -epsilon;
    let (s, c) = sc(tau, t);
    let den = c - kappa0 * s;
    if den.abs() <= FOCAL_GUARD {
        return Err(GeometryError::FocalPoint {
            t,
            denominator: den,
        });
    }
    Ok((kappa0 * c - tau * s) / den)
}

/// Central-difference residual of the Riccati law the parallel flow
/// satisfies: the absolute difference between the numeric derivative of
/// the flow and the square-plus-curvature right-hand side.
pub fn riccati_residual(
    kappa0: f64,
    epsilon: f64,
    t: f64,
    h: f64,
) -> Result<f64, GeometryError> {
    let plus = parallel_flow_curvature(kappa0, epsilon, t + h)?;
    let minus = parallel_flow_curvature(kappa0, epsilon, t - h)?;
    let kappa = parallel_flow_curvature(kappa0, epsilon, t)?;
    Ok(((plus - minus) / (2.0 * h) - (kappa * kappa + epsilon)).abs())
}

/// Curvature state of the product hypersurface at profile parameter s.
///
/// The first factor's leaves flow to distance s, the second factor's to
/// the profile value at s. The profile direction carries curvature
/// phi''/W^3, the first factor directions -phi'/W times their leaf
/// curvature, the second factor directions 1/W times theirs.
pub fn product_curvatures(
    f1: &SpaceFormFactor,
    f2: &SpaceFormFactor,
    phi: &PhiSpec,
    s: f64,
) -> Result<CurvatureState, GeometryError> {
    let phi_s = phi.value(s)?;
    let dphi = phi.derivative(s)?;
    let ddphi = phi.second_derivative(s)?;
    let w = (1.0 + dphi * dphi).sqrt();
    let theta = (dphi * dphi - 1.0) / (dphi * dphi + 1.0);
    let k1 = ddphi / (w * w * w);
    let mut k_factor1 = Vec::with_capacity(f1.dim - 1);
    for kappa0 in &f1.base_curvatures {
        let lambda = parallel_flow_curvature(*kappa0, f1.epsilon, s)?;
        k_factor1.push(-dphi / w * lambda);
    }
    let mut k_factor2 = Vec::with_capacity(f2.dim - 1);
    for kappa0 in &f2.base_curvatures {
        let mu = parallel_flow_curvature(*kappa0, f2.epsilon, phi_s)?;
        k_factor2.push(mu / w);
    }
    let h = k1 + k_factor1.iter().sum::<f64>() + k_factor2.iter().sum::<f64>();
    Ok(CurvatureState {
        s,
        k1,
        k_factor1,
        k_factor2,
        h,
        theta,
        w,
    })
}

/// A horospherical-style configuration: two factors, a linear profile
/// slope, and an s-grid.
#[derive(Debug, Clone)]
pub struct HorosphericalConfig {
    /// First factor.
    pub f1: SpaceFormFactor,
    /// Second factor.
    pub f2: SpaceFormFactor,
    /// Slope of the linear profile.
    pub slope: f64,
    /// Left end of the scan grid.
    pub s_min: f64,
    /// Right end of the scan grid.
    pub s_max: f64,
    /// Number of grid intervals.
    pub steps: usize,
}

impl HorosphericalConfig {
    /// Flat-horospherical configuration: a flat factor with hyperplane
    /// base and a hyperbolic factor with horosphere base.
    pub fn flat(
        n1: usize,
        n2: usize,
        epsilon2: f64,
        slope: f64,
    ) -> Result<HorosphericalConfig, GeometryError> {
        Ok(HorosphericalConfig {
            f1: SpaceFormFactor::hyperplane(n1)?,
            f2: SpaceFormFactor::horosphere(epsilon2, n2)?,
            slope,
            s_min: -5.0,
            s_max: 5.0,
            steps: 100,
        })
    }

    /// Bi-horospherical configuration: two hyperbolic factors with
    /// horosphere bases.
    pub fn bi(
        n1: usize,
        n2: usize,
        epsilon1: f64,
        epsilon2: f64,
        slope: f64,
    ) -> Result<HorosphericalConfig, GeometryError> {
        Ok(HorosphericalConfig {
            f1: SpaceFormFactor::horosphere(epsilon1, n1)?,
            f2: SpaceFormFactor::horosphere(epsilon2, n2)?,
            slope,
            s_min: -5.0,
            s_max: 5.0,
            steps: 100,
        })
    }

    /// Evenly spaced scan points, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let steps = self.steps.max(1);
        (0..=steps)
            .map(|i| self.s_min + (self.s_max - self.s_min) * i as f64 / steps as f64)
            .collect()
    }
}

/// Constancy scan of a horospherical-style configuration.
#[derive(Debug, Clone)]
pub struct ConstancyReport {
    /// True when both bases are the umbilic leaves of nonpositively
    /// curved factors, the pattern the constancy claims apply to.
    pub is_horospherical: bool,
    /// Angle function at the first grid point.
    pub theta: f64,
    /// Mean curvature at the first grid point.
    pub h: f64,
    /// Largest deviation of the angle function over the grid.
    pub theta_deviation: f64,
    /// Largest deviation of any principal curvature over the grid.
    pub curvature_deviation: f64,
    /// Largest deviation of the mean curvature over the grid.
    pub h_deviation: f64,
    /// True when every scanned quantity stays within the constancy
    /// tolerance.
    pub constant: bool,
}

/// Scans a configuration with linear profile over its grid and reports
/// how far the angle function, the principal curvatures, and the mean
/// curvature drift from their values at the first grid point.
///
/// Structural validity (dimensions, nonpositive curvatures, positive
/// slope) is enforced; base-curvature patterns are not, so a
/// non-horospherical base runs through the same scan and shows up as a
/// non-constant report rather than an error.
pub fn horospherical_suite(config: &HorosphericalConfig) -> Result<ConstancyReport, GeometryError> {
    if config.f1.epsilon > 0.0 || config.f2.epsilon > 0.0 {
        return Err(GeometryError::BadConfig(
            "factor curvatures must be nonpositive".to_owned(),
        ));
    }
    if config.slope <= 0.0 {
        return Err(GeometryError::BadConfig(format!(
            "profile slope must be positive, got {}",
            config.slope
        )));
    }
    if config.s_min >= config.s_max {
        return Err(GeometryError::BadConfig(
            "scan interval must be nonempty".to_owned(),
        ));
    }
    let phi = PhiSpec::linear(config.slope);
    let grid = config.grid();
    let mut first: Option<CurvatureState> = None;
    let mut theta_dev = 0.0f64;
    let mut curv_dev = 0.0f64;
    let mut h_dev = 0.0f64;
    for &s in &grid {
        let state = product_curvatures(&config.f1, &config.f2, &phi, s)?;
        match &first {
            None => first = Some(state),
            Some(base) => {
                theta_dev = theta_dev.max((state.theta - base.theta).abs());
                h_dev = h_dev.max((state.h - base.h).abs());
                let pairs = state
                    .k_factor1
                    .iter()
                    .zip(base.k_factor1.iter())
                    .chain(state.k_factor2.iter().zip(base.k_factor2.iter()));
                for (now, then) in pairs {
                    curv_dev = curv_dev.max((now - then).abs());
                }
                curv_dev = curv_dev.max((state.k1 - base.k1).abs());
            }
        }
    }
    let base = first.expect("grid is nonempty");
    Ok(ConstancyReport {
        is_horospherical: config.f1.has_umbilic_base() && config.f2.has_umbilic_base(),
        theta: base.theta,
        h: base.h,
        theta_deviation: theta_dev,
        curvature_deviation: curv_dev,
        h_deviation: h_dev,
        constant: theta_dev <= CONSTANCY_TOL
            && curv_dev <= CONSTANCY_TOL
            && h_dev <= CONSTANCY_TOL,
    })
}

/// Residuals of the two split-frame trace identities at one profile
/// parameter, computed with central differences of step h.
///
/// The identities relate the squared block norms of the shape operator,
/// the factor curvatures, and the directional derivative of the block
/// traces along the tangential part of the reflected normal. They apply
/// in the frame where that tangential direction is a principal
/// direction with curvature zero, which for a product hypersurface
/// means a linear profile.
///
/// Derivative convention: the unit normal is (-phi' e1 + e2)/W in the
/// two profile-curve directions, its reflection negates the second
/// component, and subtracting theta times the normal leaves the
/// tangential field (-2 phi'/W^3) times the profile velocity, whose
/// coordinate speed is W. A function g of the profile parameter alone
/// therefore has directional derivative (-2 phi'/W^3) dg/ds. The
/// velocity normalization is the W^3 in that factor: replacing it by
/// W^2 breaks both identities on every configuration with nonconstant
/// leaf curvatures.
pub fn trace_identity_check(
    f1: &SpaceFormFactor,
    f2: &SpaceFormFactor,
    phi: &PhiSpec,
    s: f64,
    h: f64,
) -> Result<(f64, f64), GeometryError> {
    if !phi.is_linear() {
        return Err(GeometryError::BadConfig(
            "trace identities apply to linear profiles only".to_owned(),
        ));
    }
    let state = product_curvatures(f1, f2, phi, s)?;
    let theta = state.theta;
    let dphi = phi.derivative(s)?;
    let w = state.w;

    let norm1: f64 = state.k_factor1.iter().map(|k| k * k).sum();
    let norm3: f64 = state.k_factor2.iter().map(|k| k * k).sum();

    let plus = product_curvatures(f1, f2, phi, s + h)?;
    let minus = product_curvatures(f1, f2, phi, s - h)?;
    let t_factor = -2.0 * dphi / (w * w * w);
    let trace1 = |st: &CurvatureState| st.k_factor1.iter().sum::<f64>();
    let trace3 = |st: &CurvatureState| st.k_factor2.iter().sum::<f64>();
    let t_trace1 = t_factor * (trace1(&plus) - trace1(&minus)) / (2.0 * h);
    let t_trace3 = t_factor * (trace3(&plus) - trace3(&minus)) / (2.0 * h);

    let one_minus_theta2 = 1.0 - theta * theta;
    let lhs1 = (1.0 - theta) * norm1 + f1.epsilon * (f1.dim as f64 - 1.0) / 2.0 * one_minus_theta2;
    let lhs2 = -(1.0 + theta) * norm3 - f2.epsilon * (f2.dim as f64 - 1.0) / 2.0 * one_minus_theta2;
    Ok(((lhs1 - t_trace1).abs(), (lhs2 - t_trace3).abs()))
}

/// Grid scan of the two leaf mean curvatures and the hypersurface mean
/// curvature, with the affine relation the coupling forces.
#[derive(Debug, Clone)]
pub struct FamilyScan {
    /// Grid values of the profile parameter.
    pub s_grid: Vec<f64>,
    /// Mean curvature of the first-factor leaf at each grid point.
    pub h1: Vec<f64>,
    /// Mean curvature of the second-factor leaf at each grid point.
    pub h2: Vec<f64>,
    /// Mean curvature of the hypersurface at each grid point.
    pub h_sigma: Vec<f64>,
    /// Largest deviation of the hypersurface mean curvature from its
    /// first grid value.
    pub h_deviation: f64,
    /// True when the hypersurface mean curvature is constant within the
    /// constancy tolerance.
    pub h_constant: bool,
    /// Largest residual of the affine relation between the leaf mean
    /// curvatures, with coefficients -phi'/W and 1/W and the constant
    /// fixed at the first grid point.
    pub relation_residual: f64,
}

/// Evaluates the leaf mean curvatures and the hypersurface mean
/// curvature over a grid and checks the affine relation between them
/// whose constant is fixed at the first grid point; the relation then
/// holds across the grid exactly when the hypersurface mean curvature
/// is constant.
pub fn isoparametric_family_scan(
    f1: &SpaceFormFactor,
    f2: &SpaceFormFactor,
    phi: &PhiSpec,
    s_grid: &[f64],
) -> Result<FamilyScan, GeometryError> {
    if !phi.is_linear() {
        return Err(GeometryError::BadConfig(
            "family scan applies to linear profiles only".to_owned(),
        ));
    }
    if s_grid.is_empty() {
        return Err(GeometryError::BadConfig("scan grid is empty".to_owned()));
    }
    let mut h1 = Vec::with_capacity(s_grid.len());
    let mut h2 = Vec::with_capacity(s_grid.len());
    let mut h_sigma = Vec::with_capacity(s_grid.len());
    let mut states = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let phi_s = phi.value(s)?;
        let mut leaf1 = 0.0;
        for kappa0 in &f1.base_curvatures {
            leaf1 += parallel_flow_curvature(*kappa0, f1.epsilon, s)?;
        }
        let mut leaf2 = 0.0;
        for kappa0 in &f2.base_curvatures {
            leaf2 += parallel_flow_curvature(*kappa0, f2.epsilon, phi_s)?;
        }
        let state = product_curvatures(f1, f2, phi, s)?;
        h1.push(leaf1);
        h2.push(leaf2);
        h_sigma.push(state.h);
        states.push(state);
    }
    let h0 = h_sigma[0];
    let h_deviation = h_sigma
        .iter()
        .map(|h| (h - h0).abs())
        .fold(0.0f64, f64::max);
    let c = h0 - states[0].k1;
    let mut relation_residual = 0.0f64;
    for (i, state) in states.iter().enumerate() {
        let dphi = phi.derivative(state.s)?;
        let a = -dphi / state.w;
        let b = 1.0 / state.w;
        relation_residual = relation_residual.max((a * h1[i] + b * h2[i] - c).abs());
    }
    Ok(FamilyScan {
        s_grid: s_grid.to_vec(),
        h1,
        h2,
        h_sigma,
        h_deviation,
        h_constant: h_deviation <= CONSTANCY_TOL,
        relation_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sample::seeded_rng;
    use crate::exact::{rat, rat_int, Rational};
    use crate::jacobi::{parallel_state, ShapeMatrix};
    use num_traits::{ToPrimitive, Zero};
    use rand::Rng;

    const PI_HALF: f64 = std::f64::consts::FRAC_PI_2;

    #[test]
    fn sc_matches_closed_forms() {
        let (s, c) = sc(1.0, 0.0);
        assert_eq!((s, c), (0.0, 1.0));
        let (s, c) = sc(-1.0, PI_HALF);
        assert!((s - 1.0).abs() < 1e-12);
        assert!(c.abs() < 1e-12);
        let (s, c) = sc(0.0, 2.5);
        assert_eq!((s, c), (2.5, 1.0));

        let mut rng = seeded_rng(11);
        for _ in 0..50 {
            let tau: f64 = rng.random_range(-4.0..4.0);
            let r: f64 = rng.random_range(-2.0..2.0);
            let (s, c) = sc(tau, r);
            assert!((c * c - tau * s * s - 1.0).abs() < 1e-10, "tau {tau} r {r}");
        }
    }

    #[test]
    fn parallel_flow_matches_closed_forms() {
        for t in [-2.0, -1.0, 0.5, 3.0] {
            let k = parallel_flow_curvature(1.0, -1.0, t).expect("no focal point");
            assert!((k - 1.0).abs() < 1e-12, "horosphere fixed point at {t}");
        }
        let k = parallel_flow_curvature(1.0, 0.0, 0.5).expect("no focal point");
        assert!((k - 2.0).abs() < 1e-12);
        let k = parallel_flow_curvature(0.0, 1.0, 0.3).expect("no focal point");
        assert!((k - 0.3f64.tan()).abs() < 1e-12);
        let k = parallel_flow_curvature(0.7, -2.0, 0.0).expect("no focal point");
        assert_eq!(k, 0.7);

        let err = parallel_flow_curvature(1.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, GeometryError::FocalPoint { .. }));
    }

    #[test]
    fn riccati_residual_is_small() {
        let mut rng = seeded_rng(12);
        for _ in 0..20 {
            let kappa0: f64 = rng.random_range(-0.5..0.5);
            let epsilon: f64 = rng.random_range(-2.0..1.0);
            for t in [-0.4, -0.1, 0.2, 0.5] {
                let res = riccati_residual(kappa0, epsilon, t, CENTRAL_DIFF_STEP)
                    .expect("no focal point");
                assert!(res < 1e-6, "kappa0 {kappa0} epsilon {epsilon} t {t}: {res}");
            }
        }
    }

    #[test]
    fn identity_profile_has_zero_angle_and_profile_curvature() {
        let f1 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let f2 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let phi = PhiSpec::linear(1.0);
        for s in [-4.0, -1.5, 0.0, 2.0, 5.0] {
            let state = product_curvatures(&f1, &f2, &phi, s).expect("state");
            assert_eq!(state.theta, 0.0);
            assert_eq!(state.k1, 0.0);
            assert!(state.h.abs() < 1e-12, "minimal at s = {s}: H = {}", state.h);
            assert!((state.w - 2.0f64.sqrt()).abs() < 1e-15);
            let reassembled = state.k1
                + state.k_factor1.iter().sum::<f64>()
                + state.k_factor2.iter().sum::<f64>();
            assert!((state.h - reassembled).abs() < 1e-12);
            assert!(state.theta.abs() <= 1.0);
        }
    }

    #[test]
    fn horospherical_scans_are_constant() {
        let flat = HorosphericalConfig::flat(2, 2, -1.0, 2.0).expect("config");
        let report = horospherical_suite(&flat).expect("scan");
        assert!(report.is_horospherical);
        assert!(report.constant, "theta dev {}", report.theta_deviation);
        assert!(report.theta_deviation < 1e-12);
        assert!(report.h_deviation < 1e-12);

        let bi = HorosphericalConfig::bi(2, 3, -1.0, -4.0, 1.5).expect("config");
        let report = horospherical_suite(&bi).expect("scan");
        assert!(report.is_horospherical);
        assert!(report.constant);
        assert!(report.curvature_deviation < 1e-12);
    }

    #[test]
    fn sphere_base_is_flagged_nonconstant() {
        let mut config = HorosphericalConfig::flat(2, 2, -1.0, 2.0).expect("config");
        config.f1 = SpaceFormFactor::new(0.0, 2, vec![1.0]).expect("factor");
        config.s_min = -0.5;
        config.s_max = 0.5;
        let report = horospherical_suite(&config).expect("scan");
        assert!(!report.is_horospherical);
        assert!(!report.constant);
        assert!(report.h_deviation > 1e-3);
    }

    #[test]
    fn suite_rejects_structural_errors() {
        let err = HorosphericalConfig::bi(2, 2, 1.0, -1.0, 1.0).unwrap_err();
        assert!(matches!(err, GeometryError::BadConfig(_)));
        let mut config = HorosphericalConfig::flat(2, 2, -1.0, 2.0).expect("config");
        config.slope = 0.0;
        let err = horospherical_suite(&config).unwrap_err();
        assert!(matches!(err, GeometryError::BadConfig(_)));
        let err = SpaceFormFactor::new(0.0, 1, vec![]).unwrap_err();
        assert!(matches!(err, GeometryError::BadConfig(_)));
        let err = SpaceFormFactor::new(0.0, 3, vec![1.0]).unwrap_err();
        assert!(matches!(err, GeometryError::BadConfig(_)));
    }

    #[test]
    fn trace_identities_hold_on_seeded_configs() {
        let mut rng = seeded_rng(13);
        let mut checked = 0;
        while checked < 6 {
            let eps1: f64 = rng.random_range(-2.0..0.0);
            let eps2: f64 = rng.random_range(-2.0..0.0);
            let n1 = rng.random_range(2..5usize);
            let n2 = rng.random_range(2..5usize);
            let bases1: Vec<f64> = (0..n1 - 1).map(|_| rng.random_range(-0.5..0.5)).collect();
            let bases2: Vec<f64> = (0..n2 - 1).map(|_| rng.random_range(-0.5..0.5)).collect();
            let f1 = SpaceFormFactor::new(eps1, n1, bases1).expect("factor");
            let f2 = SpaceFormFactor::new(eps2, n2, bases2).expect("factor");
            let slope: f64 = rng.random_range(0.5..2.0);
            let phi = PhiSpec::linear(slope);
            let s: f64 = rng.random_range(0.1..0.4);
            let (r1, r2) =
                trace_identity_check(&f1, &f2, &phi, s, CENTRAL_DIFF_STEP).expect("residuals");
            assert!(r1 < 1e-6, "first residual {r1}");
            assert!(r2 < 1e-6, "second residual {r2}");
            checked += 1;
        }

        let f1 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let f2 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let (r1, r2) = trace_identity_check(&f1, &f2, &PhiSpec::linear(1.0), 0.7, 1e-5)
            .expect("residuals");
        assert!(r1 < 1e-10 && r2 < 1e-10, "bi-horospherical {r1} {r2}");

        let curved = SpaceFormFactor::new(0.0, 3, vec![0.4, -0.2]).expect("factor");
        let hyper = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let (r1, r2) = trace_identity_check(&curved, &hyper, &PhiSpec::linear(1.3), 0.25, 1e-5)
            .expect("residuals");
        assert!(r1 < 1e-6 && r2 < 1e-6, "flat curved base {r1} {r2}");

        let err = trace_identity_check(
            &hyper,
            &hyper,
            &PhiSpec::sampled(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).expect("spline"),
            1.5,
            1e-5,
        )
        .unwrap_err();
        assert!(matches!(err, GeometryError::BadConfig(_)));
    }

    #[test]
    fn family_scan_detects_isoparametric_configs() {
        let grid: Vec<f64> = (0..=40).map(|i| -2.0 + 0.1 * i as f64).collect();
        let f1 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        let f2 = SpaceFormFactor::horosphere(-4.0, 3).expect("factor");
        let scan =
            isoparametric_family_scan(&f1, &f2, &PhiSpec::linear(1.2), &grid).expect("scan");
        assert!(scan.h_constant);
        assert!(scan.relation_residual < 1e-12);

        let sphere = SpaceFormFactor::new(0.0, 2, vec![1.0]).expect("factor");
        let short: Vec<f64> = (0..=10).map(|i| 0.05 * i as f64).collect();
        let scan =
            isoparametric_family_scan(&sphere, &f2, &PhiSpec::linear(1.2), &short).expect("scan");
        assert!(!scan.h_constant);
        assert!(scan.relation_residual > 1e-6);
    }

    #[test]
    fn sampled_profile_matches_linear_profile() {
        let grid: Vec<(f64, f64)> = (0..=120)
            .map(|i| {
                let s = -3.0 + 0.05 * i as f64;
                (s, 2.0 * s)
            })
            .collect();
        let sampled = PhiSpec::sampled(&grid).expect("spline");
        let linear = PhiSpec::linear(2.0);
        let f1 = SpaceFormFactor::hyperplane(2).expect("factor");
        let f2 = SpaceFormFactor::horosphere(-1.0, 2).expect("factor");
        for s in [-2.0, -0.3, 0.0, 1.1, 2.4] {
            let a = product_curvatures(&f1, &f2, &sampled, s).expect("state");
            let b = product_curvatures(&f1, &f2, &linear, s).expect("state");
            assert!((a.h - b.h).abs() < 1e-6, "h at {s}");
            assert!((a.theta - b.theta).abs() < 1e-6, "theta at {s}");
            assert!(a.k1.abs() < 1e-6, "k1 at {s}");
        }
        let err = sampled.value(4.0).unwrap_err();
        assert!(matches!(err, GeometryError::DomainExceeded { .. }));

        let cubic: Vec<(f64, f64)> = (0..=240)
            .map(|i| {
                let s = -3.0 + 0.025 * i as f64;
                (s, s + 0.1 * s * s * s)
            })
            .collect();
        let curved = PhiSpec::sampled(&cubic).expect("spline");
        let second = curved.second_derivative(0.5).expect("inside domain");
        assert!((second - 0.3).abs() < 1e-2, "spline second derivative {second}");
    }

    #[test]
    fn parallel_state_agrees_with_flow_curvature() {
        let zero = Rational::zero();
        let diag = |entries: &[Rational]| -> Vec<Vec<Rational>> {
            let n = entries.len();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { entries[i].clone() } else { zero.clone() })
                        .collect()
                })
                .collect()
        };
        let entries = [
            rat_int(0),
            rat(3, 10),
            rat(-1, 5),
            rat(1, 2),
            rat(1, 4),
        ];
        let a = ShapeMatrix::from_rows(3, 3, &diag(&entries)).expect("shape");
        let (tau1, tau2) = (4.0, 9.0);
        let r = 0.2;
        let state = parallel_state(&a, tau1, tau2, r).expect("state");
        for (i, kappa0) in entries.iter().enumerate().skip(1) {
            let epsilon = if i < 3 { -tau1 } else { -tau2 };
            let k0 = kappa0.to_f64().expect("finite");
            let expected = parallel_flow_curvature(k0, epsilon, r).expect("flow");
            assert!(
                (state.a_r[i][i] - expected).abs() < 1e-8,
                "slot {i}: {} vs {expected}",
                state.a_r[i][i]
            );
        }
    }

    #[test]
    fn parallel_mean_curvature_is_log_derivative() {
        let mut rng = seeded_rng(14);
        let a = ShapeMatrix::random_symmetric(2, 3, &mut rng).expect("shape");
        for r in [0.05, 0.1, 0.2, 0.3] {
            let state = parallel_state(&a, 4.0, 9.0, r).expect("state");
            let ratio = -state.d_prime_r / state.d_r;
            assert!(
                (state.h_r - ratio).abs() < 1e-8,
                "r {r}: trace {} vs -D'/D {ratio}",
                state.h_r
            );
        }
    }
}
