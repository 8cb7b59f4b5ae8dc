//! Lower-bound formulas for the edge ratio and the asymptotic edge
//! coefficients of Kitrick's construction.
//!
//! The bound chain for a polyhedron with `m` triangular faces and
//! `k = m/2 + 2` vertices is
//!
//! ```text
//! η ≥ 2 sin 36° · √(1 − d_k²/4) ≥ sin 36° / sin(30°·(m+4)/m)
//! ```
//!
//! where `d_k` is the largest possible minimum distance of `k` points on the
//! unit sphere. Only the upper bound on `d_k` is computed here.

use crate::error::{Error, Result};
use crate::kitrick::BaseTriangleConstants;
use crate::mesh::EdgeKind;
use crate::scalar::{cos36, pi_frac, sin36, two_sin36, Real};

/// Isosceles spherical triangle with apex angle `gamma`, equal sides `a`
/// and base `c0`, where `sin(c0/2) = sin(gamma/2)·sin a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApexTriangle<T> {
    pub gamma: T,
    pub a: T,
    pub c0: T,
}

impl<T: Real> ApexTriangle<T> {
    pub fn new(gamma: T, a: T) -> Self {
        let half = T::lit(0.5);
        let c0 = T::lit(2.0) * ((gamma * half).sin() * a.sin()).asin();
        Self { gamma, a, c0 }
    }

    /// `sin(c0/2) − sin(gamma/2)·sin a`.
    pub fn relation_residual(&self) -> T {
        let half = T::lit(0.5);
        (self.c0 * half).sin() - (self.gamma * half).sin() * self.a.sin()
    }
}

/// Both sides of the bound chain for `m` faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundChain<T> {
    pub m: u64,
    pub k: u64,
    pub dk_bound: T,
    /// `2 sin 36° · √(1 − dk_bound²/4)`
    pub refined: T,
    /// `sin 36° / sin(30°(m+4)/m)`
    pub simple: T,
}

impl<T: Real> BoundChain<T> {
    pub fn new(m: u64) -> Result<Self> {
        let simple = lower_bound_simple(m)?;
        let k = m / 2 + 2;
        let dk_bound = dk_upper_bound(k)?;
        Ok(Self { m, k, dk_bound, refined: fixed_point_closed_form(dk_bound), simple })
    }
}

fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

fn tol<T: Real>() -> T {
    T::epsilon() * T::lit(400.0)
}

/// `√(4 − 1/sin²(30°·k/(k−2)))`, an upper bound on the best minimum chord
/// of `k` points on the unit sphere. Equality holds for `k = 4, 6, 12`.
pub fn dk_upper_bound<T: Real>(k: u64) -> Result<T> {
    if k < 4 {
        return domain(format!("dk_upper_bound needs k >= 4, got {k}"));
    }
    let kk = T::from_count(k as usize);
    let angle = pi_frac::<T>(1, 6) * kk / (kk - T::lit(2.0));
    let s = angle.sin();
    let radicand = T::lit(4.0) - T::one() / (s * s);
    if radicand < T::zero() {
        return domain(format!("negative radicand {radicand} at k = {k}"));
    }
    Ok(radicand.sqrt())
}

/// `sin 36° / sin(30°·(m+4)/m)`, the lower bound on the edge ratio of any
/// inscribed convex polyhedron with `m` triangular faces.
pub fn lower_bound_simple<T: Real>(m: u64) -> Result<T> {
    if m < 4 || !m.is_multiple_of(2) {
        return domain(format!("face count must be even and >= 4, got {m}"));
    }
    let mm = T::from_count(m as usize);
    let angle = pi_frac::<T>(1, 6) * (mm + T::lit(4.0)) / mm;
    Ok(sin36::<T>() / angle.sin())
}

/// `f(η) = 2 sin 36° · √(½(1 + √(1 − (η d / 2 sin 36°)²)))`.
pub fn f_eta<T: Real>(eta: T, d: T) -> Result<T> {
    let t = eta * d / two_sin36::<T>();
    let inner = T::one() - t * t;
    if inner < -T::epsilon() * T::lit(8.0) {
        return domain(format!("f_eta undefined: eta*d/(2 sin 36) = {t} > 1"));
    }
    Ok(two_sin36::<T>() * (T::lit(0.5) * (T::one() + inner.max(T::zero()).sqrt())).sqrt())
}

fn fixed_point_closed_form<T: Real>(d: T) -> T {
    two_sin36::<T>() * (T::one() - d * d / T::lit(4.0)).sqrt()
}

/// Root of `f(η) − η` by bisection on `[0, min(2 sin 36°, 2 sin 36°/d)]`.
pub fn bisect_fixed_point<T: Real>(d: T) -> Result<T> {
    if !(d >= T::zero() && d < T::lit(2.0).sqrt()) {
        return domain(format!("need 0 <= d < sqrt 2, got {d}"));
    }
    let s = two_sin36::<T>();
    let g = |eta: T| f_eta(eta, d).map(|f| f - eta);
    let mut lo = T::zero();
    let mut hi = if d > T::one() { s / d } else { s };
    if g(hi)? >= T::zero() {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// `μ = 2 sin 36° · √(1 − d²/4)`, the fixed point of [`f_eta`], checked
/// against [`bisect_fixed_point`].
pub fn fixed_point_mu<T: Real>(d: T) -> Result<T> {
    let bisected = bisect_fixed_point(d)?;
    let mu = fixed_point_closed_form(d);
    let allowed = T::NORM_TOL.max(tol());
    if (mu - bisected).abs() > allowed {
        return domain(format!("fixed point mismatch: closed form {mu}, bisection {bisected}"));
    }
    Ok(mu)
}

/// Positive root of `145x² − 44x − 92 = 0`, i.e. `(22 + 48√6)/145`.
///
/// Points on a closed half sphere with at least 12 of them cannot all be
/// further apart than this (unit radius): the zone of height `1 + x/2`
/// must hold 12 disjoint caps of chord radius `x/2`.
pub fn half_sphere_min_distance_bound<T: Real>() -> T {
    (T::lit(22.0) + T::lit(48.0) * T::lit(6.0).sqrt()) / T::lit(145.0)
}

/// `145x² − 44x − 92`.
pub fn half_sphere_quadratic<T: Real>(x: T) -> T {
    T::lit(145.0) * x * x - T::lit(44.0) * x - T::lit(92.0)
}

/// Commonly quoted decimal for the half-sphere bound.
pub const HALF_SPHERE_QUOTED_DECIMAL: f64 = 0.9626;

/// Closed form `(24√6 + 11)/145` that is often printed next to 0.9626.
pub fn half_sphere_quoted_closed_form<T: Real>() -> T {
    (T::lit(24.0) * T::lit(6.0).sqrt() + T::lit(11.0)) / T::lit(145.0)
}

/// The half-sphere constants and whether the quoted closed form agrees
/// with the root of the quadratic.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSphereConstants {
    pub derived: f64,
    pub quoted_closed_form: f64,
    pub quoted_decimal: f64,
    pub derived_matches_decimal: bool,
    pub quoted_form_matches: bool,
    /// `derived / quoted_closed_form`
    pub ratio: f64,
}

impl HalfSphereConstants {
    pub fn note(&self) -> String {
        if self.quoted_form_matches {
            "closed form (24√6+11)/145 agrees with the quadratic root".to_string()
        } else {
            format!(
                "closed form (24√6+11)/145 = {:.6} disagrees with the quadratic root {:.6} (factor {:.6}); the root matches {}",
                self.quoted_closed_form, self.derived, self.ratio, self.quoted_decimal
            )
        }
    }
}

pub fn half_sphere_constants() -> HalfSphereConstants {
    let derived = half_sphere_min_distance_bound::<f64>();
    let quoted = half_sphere_quoted_closed_form::<f64>();
    HalfSphereConstants {
        derived,
        quoted_closed_form: quoted,
        quoted_decimal: HALF_SPHERE_QUOTED_DECIMAL,
        derived_matches_decimal: (derived - HALF_SPHERE_QUOTED_DECIMAL).abs() <= 5e-5,
        quoted_form_matches: (quoted - derived).abs() <= 1e-12,
        ratio: derived / quoted,
    }
}

/// `((2/√3)/(2 sin 36°), half_sphere_min_distance_bound())`.
///
/// The first is the minimum distance forced by `η < 2 sin 36°` when all
/// vertices sit on a half sphere; it exceeds the second, so that case is
/// impossible for more than 12 vertices.
pub fn half_sphere_contradiction_margin<T: Real>() -> (T, T) {
    let forced = T::lit(2.0) / T::lit(3.0).sqrt() / two_sin36::<T>();
    let bound = half_sphere_min_distance_bound::<T>();
    assert!(forced > bound, "half-sphere margin collapsed: {forced} <= {bound}");
    (forced, bound)
}

/// `2 sin(γ/2)·cos(a/2)`, the ratio of the base chord of an isosceles
/// spherical triangle to the chord of its equal sides.
pub fn apex_chord_ratio<T: Real>(gamma: T, a: T) -> Result<T> {
    if !(gamma > T::zero() && gamma < T::PI() && a > T::zero() && a <= T::FRAC_PI_2()) {
        return domain(format!("apex_chord_ratio needs 0 < gamma < pi, 0 < a <= pi/2; got {gamma}, {a}"));
    }
    let half = T::lit(0.5);
    let direct = T::lit(2.0) * (gamma * half).sin() * (a * half).cos();
    let tri = ApexTriangle::new(gamma, a);
    let via_base = (tri.c0 * half).sin() / (a * half).sin();
    if (direct - via_base).abs() > tol::<T>() * direct.max(T::one()) {
        return domain(format!("apex chord ratio mismatch: {direct} vs {via_base}"));
    }
    Ok(direct)
}

/// Squared edge length of Kitrick's construction in units of `(c/n)²`, to
/// first order, at grid position `u = (i/n)c`, `v = (j/n)c`.
///
/// Meridional: `4 sin²36° / (1 + tan²v·cos²36°)`.
/// Diagonal: `(1 − sin²v·sin²36°)·cos²36° / (1 − sin²u·sin²36°)² + sin²36° / (1 + tan²v·cos²36°)`.
pub fn edge_coefficient<T: Real>(kind: EdgeKind, u: T, v: T) -> Result<T> {
    let c = BaseTriangleConstants::<T>::new().c;
    let slack = T::GEOM_TOL;
    if !(v >= -slack && v <= u + slack && u <= c + slack) {
        return domain(format!("edge_coefficient needs 0 <= v <= u <= c, got u = {u}, v = {v}"));
    }
    let s2 = sin36::<T>().powi(2);
    let c2 = cos36::<T>().powi(2);
    let lat = T::one() + v.tan().powi(2) * c2;
    match kind {
        EdgeKind::Meridional => Ok(T::lit(4.0) * s2 / lat),
        EdgeKind::Diagonal => {
            let cos2_b = T::one() - v.sin().powi(2) * s2;
            let denom = T::one() - u.sin().powi(2) * s2;
            Ok(cos2_b * c2 / (denom * denom) + s2 / lat)
        }
        EdgeKind::Other => domain("edge_coefficient is defined for meridional and diagonal edges only"),
    }
}

/// `λ = ½·√(cos²36° / (1 − sin²c·sin²36°)² + sin²36°)`: the longest
/// diagonal edge near the pentagon edge midpoint is asymptotically `2λ·c/n`.
pub fn lambda_constant<T: Real>() -> T {
    let c = BaseTriangleConstants::<T>::new().c;
    let s2 = sin36::<T>().powi(2);
    let denom = T::one() - c.sin().powi(2) * s2;
    T::lit(0.5) * (cos36::<T>().powi(2) / (denom * denom) + s2).sqrt()
}

/// `sin(λc)/sin c`, which stays below `sin 36°`.
pub fn lambda_sine_ratio<T: Real>() -> T {
    let c = BaseTriangleConstants::<T>::new().c;
    (lambda_constant::<T>() * c).sin() / c.sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kitrick::canonical_triangle_mesh;
    use crate::sphgeo::arc_length;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn dk_examples() {
        let d12 = 4.0 / (10.0 + 2.0 * 5f64.sqrt()).sqrt();
        assert!(close(dk_upper_bound::<f64>(12).unwrap(), d12, 1e-14));
        assert!(close(dk_upper_bound::<f64>(12).unwrap(), 1.051_462_224_238_267_2, 1e-14));
        assert!(close(dk_upper_bound::<f64>(4).unwrap(), 2.0 * (2.0f64 / 3.0).sqrt(), 1e-14));
        assert!(close(dk_upper_bound::<f64>(6).unwrap(), 2f64.sqrt(), 1e-14));
        assert!(dk_upper_bound::<f64>(1_000_000).unwrap() < 0.004);
        assert!(dk_upper_bound::<f64>(3).is_err());
        let mut prev = f64::INFINITY;
        for k in 4..2000 {
            let d = dk_upper_bound::<f64>(k).unwrap();
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn simple_bound_examples() {
        // frozen from a 30-digit evaluation of sin 36° / sin 32°, sin 36° / sin 60°
        assert!(close(lower_bound_simple::<f64>(60).unwrap(), 1.109_197_743_816_693_4, 1e-15));
        assert!(close(lower_bound_simple::<f64>(4).unwrap(), 0.678_715_947_273_502_9, 1e-15));
        assert_eq!(lower_bound_simple::<f64>(20).unwrap(), 1.0);
        assert!(close(lower_bound_simple::<f64>(150_000).unwrap(), 1.175_542_075_399_949_6, 1e-14));
        assert!(lower_bound_simple::<f64>(61).is_err());
        assert!(lower_bound_simple::<f64>(2).is_err());
        let mut prev = 0.0;
        for m in (4..20_000).step_by(2) {
            let b = lower_bound_simple::<f64>(m).unwrap();
            assert!(b > prev && b < two_sin36::<f64>());
            prev = b;
        }
    }

    #[test]
    fn chain_is_tight() {
        for m in (4..=1_000_000u64).step_by(2) {
            let chain = BoundChain::<f64>::new(m).unwrap();
            assert!(chain.refined >= chain.simple - 1e-12, "m={m}");
            assert!(close(chain.refined, chain.simple, 1e-12), "m={m}");
            assert!(chain.refined < two_sin36::<f64>());
        }
    }

    #[test]
    fn f_eta_examples() {
        for eta in [0.5, 1.0, 1.17] {
            assert!(close(f_eta(eta, 0.0).unwrap(), two_sin36::<f64>(), 1e-15));
        }
        let d12 = dk_upper_bound::<f64>(12).unwrap();
        for d in [0.3, 1.0, d12] {
            let mu = fixed_point_closed_form(d);
            assert!(close(f_eta(mu, d).unwrap(), mu, 1e-13));
        }
        assert!(close(fixed_point_closed_form(d12), 1.0, 1e-15));
        assert!(f_eta(2.0, 1.3).is_err());
    }

    #[test]
    fn f_eta_decreasing() {
        let s = two_sin36::<f64>();
        for a in 1..100 {
            let d = 2f64.sqrt() * a as f64 / 100.0;
            let hi = s.min(s / d);
            let vals: Vec<f64> = (0..=100).map(|b| f_eta(1.0 + (hi - 1.0) * b as f64 / 100.0, d)).filter_map(|r| r.ok()).collect();
            if hi > 1.0 {
                assert!(vals.windows(2).all(|w| w[1] < w[0]), "d={d}");
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert!(close(fixed_point_mu(0.0).unwrap(), two_sin36::<f64>(), 1e-15));
        assert!(close(fixed_point_mu(1.0).unwrap(), 1.018_073_920_910_254_4, 1e-15));
        assert!(close(fixed_point_mu(1.0).unwrap(), two_sin36::<f64>() * 3f64.sqrt() / 2.0, 1e-15));
        assert!(fixed_point_mu(2f64.sqrt()).is_err());
        assert!(fixed_point_mu(-0.1).is_err());
    }

    #[test]
    fn half_sphere_and_margin() {
        let x = half_sphere_min_distance_bound::<f64>();
        assert!(close(x, 0.962_589_707_955_810_7, 1e-15));
        assert!(half_sphere_quadratic(x).abs() < 1e-12);
        let disc: f64 = 44.0 * 44.0 + 4.0 * 145.0 * 92.0;
        assert!(close((44.0 + disc.sqrt()) / 290.0, x, 1e-14));
        let l = half_sphere_constants();
        assert!(l.derived_matches_decimal);
        assert!(!l.quoted_form_matches);
        assert!(close(l.quoted_closed_form, 0.481_294_853_977_905_3, 1e-15));
        assert!(close(l.ratio, 2.0, 1e-14));
        assert!(l.note().contains("disagrees"));
        let (forced, bound) = half_sphere_contradiction_margin::<f64>();
        assert!(close(forced, 0.982_246_946_376_846, 1e-14));
        assert!(forced - bound > 0.019);
    }

    #[test]
    fn apex_ratio_examples() {
        let deg = |x: f64| x.to_radians();
        assert!(close(apex_chord_ratio(deg(72.0), 1e-9).unwrap(), two_sin36::<f64>(), 1e-12));
        assert!(close(apex_chord_ratio(deg(90.0), deg(90.0)).unwrap(), 1.0, 1e-15));
        assert!(close(ApexTriangle::new(deg(90.0), deg(90.0)).c0, deg(90.0), 1e-15));
        assert!(close(apex_chord_ratio(deg(72.0), deg(60.0)).unwrap(), 1.018_073_920_910_254_4, 1e-15));
        assert!(apex_chord_ratio(0.0, 0.5).is_err());
        assert!(apex_chord_ratio(1.0, 2.0).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let c = BaseTriangleConstants::<f64>::new().c;
        let s2 = sin36::<f64>().powi(2);
        assert!(close(edge_coefficient(EdgeKind::Meridional, c, c).unwrap(), 1.0, 1e-12));
        assert!(close(edge_coefficient(EdgeKind::Meridional, c, 0.0).unwrap(), 4.0 * s2, 1e-15));
        assert!(close(4.0 * s2, 1.381_966_011_250_105, 1e-15));
        let diag = edge_coefficient(EdgeKind::Diagonal, c, 0.0).unwrap();
        assert!(close(diag, 1.204_915_028_125_263, 1e-14));
        assert!(close(diag, (2.0 * lambda_constant::<f64>()).powi(2), 1e-13));
        assert!(diag <= 4.0 * s2);
        assert!(0.75 <= (72f64.to_radians().sin()).powi(2));
        assert!(close(lambda_constant::<f64>(), 0.548_843_107_847_147_6, 1e-15));
        assert!(close(lambda_sine_ratio::<f64>(), 0.577_274_357_562_800_1, 1e-15));
        assert!(lambda_sine_ratio::<f64>() < sin36::<f64>());
        for u in [0.0, 0.3, c] {
            assert!(close(edge_coefficient(EdgeKind::Diagonal, u, u).unwrap(), 1.0, 1e-12));
        }
        assert!(edge_coefficient(EdgeKind::Meridional, 0.2, 0.3).is_err());
        assert!(edge_coefficient(EdgeKind::Other, 0.2, 0.1).is_err());
    }

    #[test]
    fn coefficient_monotone_and_in_range() {
        let c = BaseTriangleConstants::<f64>::new().c;
        let hi = 4.0 * sin36::<f64>().powi(2);
        let grid = |k: usize| c * k as f64 / 199.0;
        let mer: Vec<f64> = (0..200).map(|k| edge_coefficient(EdgeKind::Meridional, c, grid(k)).unwrap()).collect();
        assert!(mer.windows(2).all(|w| w[1] < w[0]));
        let diag0: Vec<f64> = (0..200).map(|k| edge_coefficient(EdgeKind::Diagonal, grid(k), 0.0).unwrap()).collect();
        assert!(diag0.windows(2).all(|w| w[1] > w[0]));
        for a in 0..200 {
            for b in 0..=a {
                for kind in [EdgeKind::Meridional, EdgeKind::Diagonal] {
                    let k = edge_coefficient(kind, grid(a), grid(b)).unwrap();
                    assert!(k >= 1.0 - 1e-12 && k <= hi + 1e-12, "{kind:?} u={} v={}", grid(a), grid(b));
                }
            }
        }
    }

    #[test]
    fn coefficients_match_n64_edges() {
        let n = 64u32;
        let c = BaseTriangleConstants::<f64>::new().c;
        let t = canonical_triangle_mesh::<f64>(n).unwrap();
        let step = c / n as f64;
        let mut worst = 0.0f64;
        for &(x, y, kind) in &t.edges {
            let (i0, j0) = t.points[x];
            let (i1, j1) = t.points[y];
            let u = (i0 + i1) as f64 / 2.0 * step;
            let v = ((j0 + j1) as f64 / 2.0).abs() * step;
            let measured = (arc_length(t.positions[x], t.positions[y]) / step).powi(2);
            let predicted = edge_coefficient(kind, u, v).unwrap();
            worst = worst.max((measured - predicted).abs() / predicted);
        }
        assert!(worst < 0.02, "worst relative deviation {worst}");
    }

    #[test]
    fn single_precision_constants() {
        assert!((lower_bound_simple::<f32>(60).unwrap() - 1.109_197_7).abs() < 1e-6);
        assert!((lambda_constant::<f32>() - 0.548_843_1).abs() < 1e-6);
        assert!((fixed_point_mu::<f32>(1.0).unwrap() - 1.018_073_9).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn bisection_agrees_with_closed_form(d in 0.0f64..std::f64::consts::SQRT_2) {
            let mu = fixed_point_mu(d).unwrap();
            prop_assert!((bisect_fixed_point(d).unwrap() - mu).abs() <= 1e-12);
            prop_assert!((f_eta(mu, d).unwrap() - mu).abs() <= 1e-12);
        }

        #[test]
        fn apex_relation_holds(gamma in 0.01f64..3.1, a in 0.01f64..std::f64::consts::FRAC_PI_2) {
            prop_assert!(ApexTriangle::new(gamma, a).relation_residual().abs() < 1e-14);
            prop_assert!(apex_chord_ratio(gamma, a).is_ok());
        }
    }
}
