//! One and two parameter rotation subgroups generated by the Killing fields.

use crate::algebra::{expm, AlgebraError, Mat4};
use crate::jet::Jet2;
use crate::killing::{generator, GeneratorId};
use std::fmt;
use std::str::FromStr;

/// The three commuting generator pairs. Each spans an abelian subalgebra and
/// integrates to a two parameter rotation subgroup, which is what sweeps a
/// profile curve into a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationPair {
    Pair14,
    Pair23,
    Pair56,
}

impl RotationPair {
    pub const ALL: [RotationPair; 3] = [
        RotationPair::Pair14,
        RotationPair::Pair23,
        RotationPair::Pair56,
    ];

    pub fn generators(self) -> (GeneratorId, GeneratorId) {
        match self {
            RotationPair::Pair14 => (GeneratorId::O1, GeneratorId::O4),
            RotationPair::Pair23 => (GeneratorId::O2, GeneratorId::O3),
            RotationPair::Pair56 => (GeneratorId::O5, GeneratorId::O6),
        }
    }

    pub fn digits(self) -> &'static str {
        match self {
            RotationPair::Pair14 => "14",
            RotationPair::Pair23 => "23",
            RotationPair::Pair56 => "56",
        }
    }

    /// Curve components (1-based) that must vanish identically for the
    /// reduced patch formulas of this pair to apply.
    pub fn restricted_zero_components(self) -> (usize, usize) {
        match self {
            RotationPair::Pair14 => (2, 3),
            RotationPair::Pair23 => (3, 4),
            RotationPair::Pair56 => (1, 3),
        }
    }
}

impl fmt::Display for RotationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits())
    }
}

impl FromStr for RotationPair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "14" => Ok(RotationPair::Pair14),
            "23" => Ok(RotationPair::Pair23),
            "56" => Ok(RotationPair::Pair56),
            other => Err(format!(
                "unknown rotation pair {other:?}; expected 14, 23, or 56"
            )),
        }
    }
}

/// Closed form of the one parameter subgroup attached to a generator, in its
/// customary orientation.
///
/// Hyperbolic generators give cosh/sinh blocks in their plane. Elliptic ones
/// give rotation blocks with `sin` above the diagonal; that orientation runs
/// *against* the generator flow, i.e. for `O5` and `O6` this matrix equals
/// `expm(p * Aᵀ)` of the generator matrix `A`, not `expm(p * A)`. The matrix
/// that really exponentiates onto the family is [`infinitesimal_generator`].
pub fn one_param_matrix(id: GeneratorId, p: f64) -> Mat4 {
    let mut m = Mat4::IDENTITY;
    let (a, b) = id.plane();
    let (i, j) = (a - 1, b - 1);
    if id.is_elliptic() {
        let (s, c) = p.sin_cos();
        m.0[i][i] = c;
        m.0[i][j] = s;
        m.0[j][i] = -s;
        m.0[j][j] = c;
    } else {
        let (s, c) = (p.sinh(), p.cosh());
        m.0[i][i] = c;
        m.0[i][j] = s;
        m.0[j][i] = s;
        m.0[j][j] = c;
    }
    m
}

/// Derivative of [`one_param_matrix`] at parameter zero: the generator matrix
/// for the hyperbolic families, its transpose for the elliptic ones.
pub fn infinitesimal_generator(id: GeneratorId) -> Mat4 {
    let g = generator(id).matrix;
    if id.is_elliptic() {
        g.transpose()
    } else {
        g
    }
}

/// Max-abs difference between the closed form at `p` and the truncated
/// exponential series of the family's infinitesimal generator. The series is
/// pushed one decade below `tol` so the comparison measures the closed form,
/// not the truncation.
pub fn verify_closed_form(id: GeneratorId, p: f64, tol: f64) -> Result<f64, AlgebraError> {
    let series = expm(&(infinitesimal_generator(id) * p), tol / 10.0)?;
    Ok((series - one_param_matrix(id, p)).max_abs())
}

/// Product of the pair's two one parameter matrices. The factors act on
/// disjoint coordinate planes, so their order does not matter.
pub fn two_param_matrix(pair: RotationPair, p1: f64, p2: f64) -> Mat4 {
    let (a, b) = pair.generators();
    one_param_matrix(a, p1) * one_param_matrix(b, p2)
}

/// 4x4 matrix of jets: entries carry derivatives with respect to a common
/// underlying parameter.
pub type JetMat4 = [[Jet2; 4]; 4];

/// [`one_param_matrix`] with the subgroup parameter given as a jet, so the
/// entries carry first and second derivatives in the underlying parameter.
pub fn one_param_jet(id: GeneratorId, p: Jet2) -> JetMat4 {
    let mut m = [[Jet2::ZERO; 4]; 4];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Jet2::constant(1.0);
    }
    let (a, b) = id.plane();
    let (i, j) = (a - 1, b - 1);
    if id.is_elliptic() {
        let (s, c) = (p.sin(), p.cos());
        m[i][i] = c;
        m[i][j] = s;
        m[j][i] = -s;
        m[j][j] = c;
    } else {
        let (s, c) = (p.sinh(), p.cosh());
        m[i][i] = c;
        m[i][j] = s;
        m[j][i] = s;
        m[j][j] = c;
    }
    m
}

/// Jet valued product of the pair's two factors.
pub fn two_param_jet(pair: RotationPair, p1: Jet2, p2: Jet2) -> JetMat4 {
    let (a, b) = pair.generators();
    let ma = one_param_jet(a, p1);
    let mb = one_param_jet(b, p2);
    let mut out = [[Jet2::ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Jet2::ZERO;
            for (k, mb_row) in mb.iter().enumerate() {
                acc = acc + ma[i][k] * mb_row[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Split a jet matrix into its value, first, and second derivative parts.
pub fn split_jet_matrix(m: &JetMat4) -> (Mat4, Mat4, Mat4) {
    let mut v = Mat4::ZERO;
    let mut d1 = Mat4::ZERO;
    let mut d2 = Mat4::ZERO;
    for (i, row) in m.iter().enumerate() {
        for (j, jet) in row.iter().enumerate() {
            v.0[i][j] = jet.value;
            d1.0[i][j] = jet.d1;
            d2.0[i][j] = jet.d2;
        }
    }
    (v, d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{isometry_residual, Mat4};
    use proptest::prelude::*;

    #[test]
    fn hyperbolic_block_layout() {
        let m = one_param_matrix(GeneratorId::O1, 0.5);
        let (s, c) = (0.5f64.sinh(), 0.5f64.cosh());
        assert_eq!(m.0[0][0], c);
        assert_eq!(m.0[0][2], s);
        assert_eq!(m.0[2][0], s);
        assert_eq!(m.0[2][2], c);
        assert_eq!(m.0[1][1], 1.0);
        assert_eq!(m.0[3][3], 1.0);
        assert_eq!(m.0[0][1], 0.0);
    }

    #[test]
    fn elliptic_block_layout() {
        let m = one_param_matrix(GeneratorId::O5, 0.5);
        let (s, c) = 0.5f64.sin_cos();
        assert_eq!(m.0[0][0], c);
        assert_eq!(m.0[0][1], s);
        assert_eq!(m.0[1][0], -s);
        assert_eq!(m.0[1][1], c);
        let m = one_param_matrix(GeneratorId::O6, -1.2);
        let (s, c) = (-1.2f64).sin_cos();
        assert_eq!(m.0[2][2], c);
        assert_eq!(m.0[2][3], s);
        assert_eq!(m.0[3][2], -s);
    }

    #[test]
    fn derivative_at_zero_matches_infinitesimal_generator() {
        for id in GeneratorId::ALL {
            let (_, d1, _) = split_jet_matrix(&one_param_jet(id, Jet2::variable(0.0)));
            assert_eq!(d1, infinitesimal_generator(id));
        }
    }

    #[test]
    fn closed_forms_match_series() {
        for id in GeneratorId::ALL {
            for k in 0..13 {
                let p = -3.0 + 0.5 * f64::from(k);
                let res = verify_closed_form(id, p, 1e-10).unwrap();
                assert!(res <= 1e-10, "{id} at {p}: residual {res:.3e}");
            }
        }
    }

    #[test]
    fn elliptic_orientation_runs_against_the_generator() {
        // for the elliptic families exp(p A) is the closed form at -p
        let id = GeneratorId::O5;
        let p = 0.8;
        let series = expm(&(generator(id).matrix * p), 1e-14).unwrap();
        assert!((series - one_param_matrix(id, -p)).max_abs() < 1e-13);
        assert!((series - one_param_matrix(id, p)).max_abs() > 1.0);
    }

    #[test]
    fn pair_parsing_and_metadata() {
        assert_eq!("14".parse::<RotationPair>().unwrap(), RotationPair::Pair14);
        assert_eq!("56".parse::<RotationPair>().unwrap(), RotationPair::Pair56);
        assert!("15".parse::<RotationPair>().is_err());
        assert_eq!(RotationPair::Pair23.to_string(), "23");
        assert_eq!(
            RotationPair::Pair23.generators(),
            (GeneratorId::O2, GeneratorId::O3)
        );
    }

    #[test]
    fn jet_matrix_value_part_matches_plain_matrix() {
        let (v, _, _) = split_jet_matrix(&two_param_jet(
            RotationPair::Pair56,
            Jet2::variable(0.7),
            Jet2::constant(1.1),
        ));
        let direct = two_param_matrix(RotationPair::Pair56, 0.7, 1.1);
        assert!((v - direct).max_abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn group_law_and_inverses(idx in 0usize..6, a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let id = GeneratorId::from_index(idx).unwrap();
            let law = (one_param_matrix(id, a) * one_param_matrix(id, b)
                - one_param_matrix(id, a + b)).max_abs();
            prop_assert!(law <= 1e-12 * 1.0f64.max(one_param_matrix(id, a + b).max_abs()));
            let inv = (one_param_matrix(id, a) * one_param_matrix(id, -a) - Mat4::IDENTITY).max_abs();
            prop_assert!(inv <= 1e-12 * 1.0f64.max(one_param_matrix(id, a).max_abs()));
        }

        #[test]
        fn families_preserve_the_scalar_product(idx in 0usize..6, p in -3.0f64..3.0) {
            let id = GeneratorId::from_index(idx).unwrap();
            let m = one_param_matrix(id, p);
            let scale = 1.0f64.max(m.max_abs() * m.max_abs());
            prop_assert!(isometry_residual(&m) <= 1e-12 * scale);
            prop_assert!((m.det() - 1.0).abs() <= 1e-12 * scale);
        }

        #[test]
        fn commuting_factors_exchange(pair_idx in 0usize..3, p1 in -3.0f64..3.0, p2 in -3.0f64..3.0) {
            let pair = RotationPair::ALL[pair_idx];
            let (a, b) = pair.generators();
            let ab = one_param_matrix(a, p1) * one_param_matrix(b, p2);
            let ba = one_param_matrix(b, p2) * one_param_matrix(a, p1);
            prop_assert!((ab - ba).max_abs() <= 1e-14 * 1.0f64.max(ab.max_abs()));
        }
    }
}
