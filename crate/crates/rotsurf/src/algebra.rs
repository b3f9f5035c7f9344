//! Vectors, matrices, and the fixed scalar product on R^4 with signature
//! (-,-,+,+).
//!
//! The first two coordinate directions carry a minus sign in the scalar
//! product, the last two a plus sign. Everything downstream (causal types,
//! adapted frames, curvature) is phrased through [`inner_product`], so this
//! module is the single source of truth for sign conventions.

use serde::Serialize;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use thiserror::Error;

/// Diagonal of the ambient scalar product matrix.
pub const SIGNATURE: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// Errors from the numerical routines in this module.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("matrix exponential did not converge after {terms} terms (last term magnitude {magnitude:.3e})")]
    FailedConvergence { terms: usize, magnitude: f64 },
    #[error("quadric radius must be positive and finite, got {0}")]
    BadRadius(f64),
}

/// Point or vector of R^4. Coordinates are 0-based in code; the customary
/// 1-based names x1..x4 appear only in text output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Standard basis vector, 1-based to match the usual i_k notation.
    pub fn basis(k: usize) -> Self {
        assert!((1..=4).contains(&k), "basis index must be 1..=4, got {k}");
        let mut v = Vec4::ZERO;
        v.0[k - 1] = 1.0;
        v
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        let mut out = self;
        for i in 0..4 {
            out.0[i] += rhs.0[i];
        }
        out
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        let mut out = self;
        for i in 0..4 {
            out.0[i] -= rhs.0[i];
        }
        out
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        Vec4([self.0[0] * k, self.0[1] * k, self.0[2] * k, self.0[3] * k])
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

/// The scalar product `-u1 v1 - u2 v2 + u3 v3 + u4 v4`.
pub fn inner_product(u: Vec4, v: Vec4) -> f64 {
    -u.0[0] * v.0[0] - u.0[1] * v.0[1] + u.0[2] * v.0[2] + u.0[3] * v.0[3]
}

/// `sqrt(|<v, v>|)`, the ambient length regardless of causal type.
pub fn norm(v: Vec4) -> f64 {
    inner_product(v, v).abs().sqrt()
}

/// Causal type of a vector under the ambient product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CausalCharacter {
    /// `<v, v> > 0`, or the zero vector.
    SpaceLike,
    /// `<v, v> < 0`.
    TimeLike,
    /// `<v, v> = 0` with `v != 0`.
    Null,
}

/// Exact classification; ties go by the sign of the scalar square with no
/// tolerance. See [`causal_character_eps`] for noisy data.
pub fn causal_character(v: Vec4) -> CausalCharacter {
    let q = inner_product(v, v);
    if q > 0.0 {
        CausalCharacter::SpaceLike
    } else if q < 0.0 {
        CausalCharacter::TimeLike
    } else if v == Vec4::ZERO {
        CausalCharacter::SpaceLike
    } else {
        CausalCharacter::Null
    }
}

/// Classification that treats `|<v, v>| <= tol` as vanishing, for vectors
/// that come out of floating point pipelines.
pub fn causal_character_eps(v: Vec4, tol: f64) -> CausalCharacter {
    let q = inner_product(v, v);
    if q.abs() <= tol {
        if v == Vec4::ZERO {
            CausalCharacter::SpaceLike
        } else {
            CausalCharacter::Null
        }
    } else if q > 0.0 {
        CausalCharacter::SpaceLike
    } else {
        CausalCharacter::TimeLike
    }
}

/// Ternary product: the unique vector with `inner_product(cross3(x,y,z), w)`
/// equal to the determinant of the matrix with rows `w, x, y, z`.
///
/// Computed by expanding the formal determinant with first row
/// `(-i1, -i2, i3, i4)` and rows `x, y, z` below it, so the result is
/// orthogonal to all three arguments.
pub fn cross3(x: Vec4, y: Vec4, z: Vec4) -> Vec4 {
    // minor of the 3x4 block [x; y; z] on columns (c0, c1, c2)
    let minor = |c0: usize, c1: usize, c2: usize| -> f64 {
        x.0[c0] * (y.0[c1] * z.0[c2] - y.0[c2] * z.0[c1])
            - x.0[c1] * (y.0[c0] * z.0[c2] - y.0[c2] * z.0[c0])
            + x.0[c2] * (y.0[c0] * z.0[c1] - y.0[c1] * z.0[c0])
    };
    Vec4([
        -minor(1, 2, 3),
        minor(0, 2, 3),
        minor(0, 1, 3),
        -minor(0, 1, 2),
    ])
}

/// Row-major 4x4 matrix; `m.0[row][col]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[0.0; 4]; 4]);

    pub const IDENTITY: Mat4 = {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = 1.0;
        m[1][1] = 1.0;
        m[2][2] = 1.0;
        m[3][3] = 1.0;
        Mat4(m)
    };

    pub fn transpose(&self) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn row(&self, i: usize) -> Vec4 {
        Vec4(self.0[i])
    }

    pub fn from_rows(rows: [Vec4; 4]) -> Mat4 {
        Mat4([rows[0].0, rows[1].0, rows[2].0, rows[3].0])
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        let r = [1, 2, 3];
        m[0][0] * minor(r, [1, 2, 3]) - m[0][1] * minor(r, [0, 2, 3])
            + m[0][2] * minor(r, [0, 1, 3])
            - m[0][3] * minor(r, [0, 1, 2])
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self * -1.0
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }
}

impl Mul<Vec4> for Mat4 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        let mut out = Vec4::ZERO;
        for i in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += self.0[i][k] * v.0[k];
            }
            out.0[i] = acc;
        }
        out
    }
}

impl Mul<f64> for Mat4 {
    type Output = Mat4;
    fn mul(self, k: f64) -> Mat4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] *= k;
            }
        }
        out
    }
}

/// Matrix of the scalar product, `diag(-1, -1, 1, 1)`.
pub fn metric_matrix() -> Mat4 {
    let mut m = Mat4::ZERO;
    for (i, sign) in SIGNATURE.iter().enumerate() {
        m.0[i][i] = *sign;
    }
    m
}

/// Largest entry of `Mᵀ G M - G`; zero exactly when `M` preserves the scalar
/// product.
pub fn isometry_residual(m: &Mat4) -> f64 {
    let g = metric_matrix();
    (m.transpose() * g * *m - g).max_abs()
}

pub fn is_pseudo_orthogonal(m: &Mat4, tol: f64) -> bool {
    isometry_residual(m) <= tol
}

/// Matrix exponential by the plain Taylor series.
///
/// Terms are accumulated until the next one drops below `tol` in max-abs norm
/// and at least four terms are already in the sum; 200 terms without that
/// happening is reported as a convergence failure. Plenty for the generator
/// scale this crate works at (entries of order one, parameters of order ten).
pub fn expm(m: &Mat4, tol: f64) -> Result<Mat4, AlgebraError> {
    let mut sum = Mat4::IDENTITY;
    let mut term = Mat4::IDENTITY;
    for n in 1..=200u32 {
        term = term * *m * (1.0 / f64::from(n));
        if term.max_abs() <= tol && n >= 4 {
            return Ok(sum);
        }
        sum = sum + term;
    }
    Err(AlgebraError::FailedConvergence {
        terms: 200,
        magnitude: term.max_abs(),
    })
}

/// Which central quadric a point is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadricKind {
    /// `<x - m, x - m> = r^2`.
    PseudoSphere,
    /// `<x - m, x - m> = -r^2`.
    PseudoHyperbolic,
    /// `<x - m, x - m> = -r^2`, restricted to the sheet with `x1 - m1 > 0`.
    Hyperbolic,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Quadric {
    pub kind: QuadricKind,
    pub center: Vec4,
    pub radius: f64,
}

impl Quadric {
    pub fn new(kind: QuadricKind, center: Vec4, radius: f64) -> Result<Self, AlgebraError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(AlgebraError::BadRadius(radius));
        }
        Ok(Quadric {
            kind,
            center,
            radius,
        })
    }

    fn target(&self) -> f64 {
        match self.kind {
            QuadricKind::PseudoSphere => self.radius * self.radius,
            QuadricKind::PseudoHyperbolic | QuadricKind::Hyperbolic => -self.radius * self.radius,
        }
    }
}

/// Defect of a point against a quadric equation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadricResidual {
    /// `<p - m, p - m>` minus the quadric's right hand side; zero on the set.
    pub defect: f64,
    /// For the hyperbolic kind, whether `p` sits on the `x1 - m1 > 0` sheet.
    pub on_positive_sheet: Option<bool>,
}

pub fn quadric_residual(p: Vec4, q: &Quadric) -> QuadricResidual {
    let d = p - q.center;
    QuadricResidual {
        defect: inner_product(d, d) - q.target(),
        on_positive_sheet: match q.kind {
            QuadricKind::Hyperbolic => Some(d.0[0] > 0.0),
            _ => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inner_product_signs() {
        assert_eq!(inner_product(Vec4::basis(1), Vec4::basis(1)), -1.0);
        assert_eq!(inner_product(Vec4::basis(2), Vec4::basis(2)), -1.0);
        assert_eq!(inner_product(Vec4::basis(3), Vec4::basis(3)), 1.0);
        assert_eq!(inner_product(Vec4::basis(4), Vec4::basis(4)), 1.0);
        assert_eq!(inner_product(Vec4::basis(1), Vec4::basis(3)), 0.0);
        let u = Vec4::new(1.0, 2.0, 3.0, 4.0);
        let v = Vec4::new(-2.0, 0.5, 1.0, 3.0);
        assert_eq!(inner_product(u, v), 2.0 - 1.0 + 3.0 + 12.0);
    }

    #[test]
    fn causal_types() {
        assert_eq!(
            causal_character(Vec4::new(1.0, 0.0, 0.0, 0.0)),
            CausalCharacter::TimeLike
        );
        assert_eq!(
            causal_character(Vec4::new(0.0, 0.0, 1.0, 0.0)),
            CausalCharacter::SpaceLike
        );
        assert_eq!(
            causal_character(Vec4::new(1.0, 0.0, 1.0, 0.0)),
            CausalCharacter::Null
        );
        assert_eq!(causal_character(Vec4::ZERO), CausalCharacter::SpaceLike);
        let almost_null = Vec4::new(1.0, 0.0, 1.0 + 1e-13, 0.0);
        assert_eq!(
            causal_character_eps(almost_null, 1e-9),
            CausalCharacter::Null
        );
        assert_eq!(
            causal_character_eps(Vec4::ZERO, 1e-9),
            CausalCharacter::SpaceLike
        );
    }

    #[test]
    fn norm_uses_absolute_value() {
        assert_eq!(norm(Vec4::new(3.0, 0.0, 0.0, 0.0)), 3.0);
        assert_eq!(norm(Vec4::new(0.0, 0.0, 4.0, 0.0)), 4.0);
    }

    #[test]
    fn cross3_basis_anchor() {
        let c = cross3(Vec4::basis(2), Vec4::basis(3), Vec4::basis(4));
        assert_eq!(c, Vec4::new(-1.0, 0.0, 0.0, 0.0));
        // and the defining determinant identity on that anchor
        let det = Mat4::from_rows([
            Vec4::basis(1),
            Vec4::basis(2),
            Vec4::basis(3),
            Vec4::basis(4),
        ])
        .det();
        assert_eq!(inner_product(c, Vec4::basis(1)), det);
    }

    #[test]
    fn expm_zero_is_identity() {
        let e = expm(&Mat4::ZERO, 1e-14).unwrap();
        assert_eq!(e, Mat4::IDENTITY);
    }

    #[test]
    fn expm_matches_closed_rotation_block() {
        // A = e21 - e12 exponentiates to a rotation in the (1,2) plane
        let mut a = Mat4::ZERO;
        a.0[1][0] = 1.0;
        a.0[0][1] = -1.0;
        let th = 0.73f64;
        let e = expm(&(a * th), 1e-15).unwrap();
        let mut expect = Mat4::IDENTITY;
        expect.0[0][0] = th.cos();
        expect.0[0][1] = -th.sin();
        expect.0[1][0] = th.sin();
        expect.0[1][1] = th.cos();
        assert!((e - expect).max_abs() < 1e-14);
    }

    #[test]
    fn expm_reports_divergence() {
        let big = Mat4::IDENTITY * 500.0;
        match expm(&big, 1e-12) {
            Err(AlgebraError::FailedConvergence { terms, .. }) => assert_eq!(terms, 200),
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn det_anchor() {
        let m = Mat4([
            [2.0, 0.0, 0.0, 0.0],
            [0.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, 4.0, 0.0],
            [0.0, 0.0, 0.0, 5.0],
        ]);
        assert_eq!(m.det(), 120.0);
        let mut boost = Mat4::IDENTITY;
        boost.0[0][0] = 2.0f64.cosh();
        boost.0[0][2] = 2.0f64.sinh();
        boost.0[2][0] = 2.0f64.sinh();
        boost.0[2][2] = 2.0f64.cosh();
        assert!((boost.det() - 1.0).abs() < 1e-12);
        assert!(isometry_residual(&boost) < 1e-12);
        assert!(is_pseudo_orthogonal(&boost, 1e-12));
    }

    #[test]
    fn quadric_residuals() {
        let q = Quadric::new(QuadricKind::Hyperbolic, Vec4::ZERO, 2.0).unwrap();
        // (2, 0, 0, 0) has scalar square -4 = -r^2 and positive first coordinate
        let r = quadric_residual(Vec4::new(2.0, 0.0, 0.0, 0.0), &q);
        assert_eq!(r.defect, 0.0);
        assert_eq!(r.on_positive_sheet, Some(true));
        let r = quadric_residual(Vec4::new(-2.0, 0.0, 0.0, 0.0), &q);
        assert_eq!(r.on_positive_sheet, Some(false));

        let s = Quadric::new(QuadricKind::PseudoSphere, Vec4::ZERO, 1.0).unwrap();
        let r = quadric_residual(Vec4::new(0.0, 0.0, 1.0, 0.0), &s);
        assert_eq!(r.defect, 0.0);
        assert_eq!(r.on_positive_sheet, None);

        assert!(Quadric::new(QuadricKind::PseudoSphere, Vec4::ZERO, 0.0).is_err());
        assert!(Quadric::new(QuadricKind::PseudoSphere, Vec4::ZERO, -1.0).is_err());
    }

    fn vec4_strategy() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-5.0f64..5.0).prop_map(Vec4)
    }

    proptest! {
        #[test]
        fn cross3_is_orthogonal_to_arguments(x in vec4_strategy(), y in vec4_strategy(), z in vec4_strategy()) {
            let c = cross3(x, y, z);
            let scale = 1.0f64.max(c.max_abs()) * 1.0f64
                .max(x.max_abs()).max(y.max_abs()).max(z.max_abs());
            prop_assert!(inner_product(c, x).abs() <= 1e-9 * scale);
            prop_assert!(inner_product(c, y).abs() <= 1e-9 * scale);
            prop_assert!(inner_product(c, z).abs() <= 1e-9 * scale);
        }

        #[test]
        fn cross3_satisfies_determinant_identity(
            w in vec4_strategy(), x in vec4_strategy(), y in vec4_strategy(), z in vec4_strategy()
        ) {
            let lhs = inner_product(cross3(x, y, z), w);
            let rhs = Mat4::from_rows([w, x, y, z]).det();
            let scale = 1.0f64.max(lhs.abs()).max(rhs.abs());
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }

        #[test]
        fn cross3_alternates(x in vec4_strategy(), y in vec4_strategy(), z in vec4_strategy()) {
            let a = cross3(x, y, z);
            let b = cross3(y, x, z);
            let scale = 1.0f64.max(a.max_abs());
            prop_assert!((a + b).max_abs() <= 1e-11 * scale);
        }
    }
}
