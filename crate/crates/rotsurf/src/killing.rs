//! The rotational Killing fields of the scalar product and their bracket
//! structure.
//!
//! Six linear vector fields span the rotation part of the isometry algebra.
//! Four are hyperbolic, mixing a timelike direction with a spacelike one, and
//! two are elliptic, rotating inside the timelike plane (1,2) or the
//! spacelike plane (3,4).

use crate::algebra::{metric_matrix, Mat4, Vec4};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KillingError {
    #[error("bracket [{a}, {b}] is not zero or a signed generator")]
    UnrecognizedBracket { a: GeneratorId, b: GeneratorId },
    #[error("subalgebra check needs at least one generator")]
    EmptySet,
}

/// Names of the six rotational generators. `O1..O4` are hyperbolic, `O5` and
/// `O6` elliptic; [`GeneratorId::plane`] says which coordinate plane each one
/// moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    O1,
    O2,
    O3,
    O4,
    O5,
    O6,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 6] = [
        GeneratorId::O1,
        GeneratorId::O2,
        GeneratorId::O3,
        GeneratorId::O4,
        GeneratorId::O5,
        GeneratorId::O6,
    ];

    pub fn index(self) -> usize {
        match self {
            GeneratorId::O1 => 0,
            GeneratorId::O2 => 1,
            GeneratorId::O3 => 2,
            GeneratorId::O4 => 3,
            GeneratorId::O5 => 4,
            GeneratorId::O6 => 5,
        }
    }

    pub fn from_index(i: usize) -> Option<GeneratorId> {
        GeneratorId::ALL.get(i).copied()
    }

    /// The coordinate plane the generator rotates, 1-based.
    pub fn plane(self) -> (usize, usize) {
        match self {
            GeneratorId::O1 => (1, 3),
            GeneratorId::O2 => (1, 4),
            GeneratorId::O3 => (2, 3),
            GeneratorId::O4 => (2, 4),
            GeneratorId::O5 => (1, 2),
            GeneratorId::O6 => (3, 4),
        }
    }

    pub fn is_elliptic(self) -> bool {
        matches!(self, GeneratorId::O5 | GeneratorId::O6)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.index() + 1)
    }
}

/// Linear vector field `p -> A p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearField {
    pub matrix: Mat4,
}

impl LinearField {
    pub fn new(matrix: Mat4) -> Self {
        LinearField { matrix }
    }

    pub fn evaluate(&self, p: Vec4) -> Vec4 {
        self.matrix * p
    }
}

/// Matrix of a generator; entries are 0 or ±1 and the twelve nonzero
/// positions across all six generators are pairwise distinct.
pub fn generator(id: GeneratorId) -> LinearField {
    let mut m = Mat4::ZERO;
    match id {
        // hyperbolic: symmetric pair in the plane
        GeneratorId::O1 => {
            m.0[0][2] = 1.0;
            m.0[2][0] = 1.0;
        }
        GeneratorId::O2 => {
            m.0[0][3] = 1.0;
            m.0[3][0] = 1.0;
        }
        GeneratorId::O3 => {
            m.0[1][2] = 1.0;
            m.0[2][1] = 1.0;
        }
        GeneratorId::O4 => {
            m.0[1][3] = 1.0;
            m.0[3][1] = 1.0;
        }
        // elliptic: antisymmetric pair
        GeneratorId::O5 => {
            m.0[1][0] = 1.0;
            m.0[0][1] = -1.0;
        }
        GeneratorId::O6 => {
            m.0[3][2] = 1.0;
            m.0[2][3] = -1.0;
        }
    }
    LinearField::new(m)
}

/// Coefficients of a general rotational Killing field.
///
/// The combination is `a O2 + b O3 + c O1 + d O4 + e O6 + f O5`; the letters
/// follow the customary order of these fields, which interleaves the
/// generator numbering.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KillingCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

pub fn killing_field(k: &KillingCoefficients) -> LinearField {
    let weights = [
        (k.a, GeneratorId::O2),
        (k.b, GeneratorId::O3),
        (k.c, GeneratorId::O1),
        (k.d, GeneratorId::O4),
        (k.e, GeneratorId::O6),
        (k.f, GeneratorId::O5),
    ];
    let mut m = Mat4::ZERO;
    for (w, id) in weights {
        m = m + generator(id).matrix * w;
    }
    LinearField::new(m)
}

/// `Aᵀ G + G A` for the field `p -> A p`: the Lie derivative of the scalar
/// product along the field, which vanishes identically exactly when the field
/// is Killing.
///
/// For any combination of the six generators this is exactly zero in floating
/// point as well, because each entry reduces to a single cancellation `w - w`.
pub fn lie_derivative_metric(w: &LinearField) -> Mat4 {
    let g = metric_matrix();
    w.matrix.transpose() * g + g * w.matrix
}

/// Lie bracket `[X, Y]` of linear fields: for `X = A p`, `Y = B p` the
/// bracket is the linear field with matrix `B A - A B`.
pub fn bracket(x: &LinearField, y: &LinearField) -> LinearField {
    LinearField::new(y.matrix * x.matrix - x.matrix * y.matrix)
}

/// A bracket value classified against the generator basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketEntry {
    Zero,
    Plus(GeneratorId),
    Minus(GeneratorId),
}

impl fmt::Display for BracketEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketEntry::Zero => write!(f, "0"),
            BracketEntry::Plus(id) => write!(f, "{id}"),
            BracketEntry::Minus(id) => write!(f, "-{id}"),
        }
    }
}

pub type BracketTable = [[BracketEntry; 6]; 6];

/// All 36 pairwise brackets classified as `0` or `±Ok`.
///
/// Generator matrices have integer entries, so the comparison is exact; a
/// bracket that is not a signed generator is an error rather than a guess.
pub fn bracket_table() -> Result<BracketTable, KillingError> {
    let mut table = [[BracketEntry::Zero; 6]; 6];
    for a in GeneratorId::ALL {
        for b in GeneratorId::ALL {
            let m = bracket(&generator(a), &generator(b)).matrix;
            table[a.index()][b.index()] = classify(&m, a, b)?;
        }
    }
    Ok(table)
}

fn classify(m: &Mat4, a: GeneratorId, b: GeneratorId) -> Result<BracketEntry, KillingError> {
    if *m == Mat4::ZERO {
        return Ok(BracketEntry::Zero);
    }
    for k in GeneratorId::ALL {
        let g = generator(k).matrix;
        if *m == g {
            return Ok(BracketEntry::Plus(k));
        }
        if *m == -g {
            return Ok(BracketEntry::Minus(k));
        }
    }
    Err(KillingError::UnrecognizedBracket { a, b })
}

/// Whether the span of `set` is closed under the bracket.
pub fn is_closed_subalgebra(set: &[GeneratorId]) -> Result<bool, KillingError> {
    if set.is_empty() {
        return Err(KillingError::EmptySet);
    }
    let table = bracket_table()?;
    for &x in set {
        for &y in set {
            match table[x.index()][y.index()] {
                BracketEntry::Zero => {}
                BracketEntry::Plus(k) | BracketEntry::Minus(k) => {
                    if !set.contains(&k) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Plain text rendering of the bracket table, rows bracketed on the left.
pub fn render_bracket_table(table: &BracketTable) -> String {
    let mut out = String::new();
    out.push_str("[row, col]");
    for id in GeneratorId::ALL {
        out.push_str(&format!("{:>6}", id.to_string()));
    }
    out.push('\n');
    for a in GeneratorId::ALL {
        out.push_str(&format!("{:<10}", a.to_string()));
        for b in GeneratorId::ALL {
            out.push_str(&format!("{:>6}", table[a.index()][b.index()].to_string()));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vec4;
    use rand::{Rng, SeedableRng};

    #[test]
    fn generator_planes_and_entries() {
        for id in GeneratorId::ALL {
            let m = generator(id).matrix;
            let (p, q) = id.plane();
            let (i, j) = (p - 1, q - 1);
            if id.is_elliptic() {
                assert_eq!(m.0[j][i], 1.0);
                assert_eq!(m.0[i][j], -1.0);
            } else {
                assert_eq!(m.0[i][j], 1.0);
                assert_eq!(m.0[j][i], 1.0);
            }
            // exactly two nonzero entries
            let nonzero = m.0.iter().flatten().filter(|x| **x != 0.0).count();
            assert_eq!(nonzero, 2);
        }
    }

    #[test]
    fn field_evaluation() {
        // O1 sends (x1, x2, x3, x4) to (x3, 0, x1, 0)
        let w = generator(GeneratorId::O1);
        let v = w.evaluate(Vec4::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(v, Vec4::new(3.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn coefficient_mapping() {
        // the `a` slot weights O2, whose plane is (1,4)
        let w = killing_field(&KillingCoefficients {
            a: 2.0,
            ..Default::default()
        });
        assert_eq!(w.matrix.0[0][3], 2.0);
        assert_eq!(w.matrix.0[3][0], 2.0);
        // the `f` slot weights the elliptic O5
        let w = killing_field(&KillingCoefficients {
            f: -1.5,
            ..Default::default()
        });
        assert_eq!(w.matrix.0[1][0], -1.5);
        assert_eq!(w.matrix.0[0][1], 1.5);
    }

    #[test]
    fn all_combinations_are_killing_exactly() {
        for id in GeneratorId::ALL {
            assert_eq!(lie_derivative_metric(&generator(id)), Mat4::ZERO);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = KillingCoefficients {
                a: rng.random_range(-10.0..10.0),
                b: rng.random_range(-10.0..10.0),
                c: rng.random_range(-10.0..10.0),
                d: rng.random_range(-10.0..10.0),
                e: rng.random_range(-10.0..10.0),
                f: rng.random_range(-10.0..10.0),
            };
            assert_eq!(lie_derivative_metric(&killing_field(&k)), Mat4::ZERO);
        }
    }

    #[test]
    fn bracket_relations() {
        use BracketEntry::{Minus, Plus, Zero};
        use GeneratorId::*;
        let t = bracket_table().unwrap();
        let at = |a: GeneratorId, b: GeneratorId| t[a.index()][b.index()];
        // upper triangle
        assert_eq!(at(O1, O2), Plus(O6));
        assert_eq!(at(O1, O3), Plus(O5));
        assert_eq!(at(O1, O4), Zero);
        assert_eq!(at(O1, O5), Plus(O3));
        assert_eq!(at(O1, O6), Plus(O2));
        assert_eq!(at(O2, O3), Zero);
        assert_eq!(at(O2, O4), Plus(O5));
        assert_eq!(at(O2, O5), Plus(O4));
        assert_eq!(at(O2, O6), Minus(O1));
        assert_eq!(at(O3, O4), Plus(O6));
        assert_eq!(at(O3, O5), Minus(O1));
        assert_eq!(at(O3, O6), Plus(O4));
        assert_eq!(at(O4, O5), Minus(O2));
        assert_eq!(at(O4, O6), Minus(O3));
        assert_eq!(at(O5, O6), Zero);
        // diagonal and antisymmetry
        for a in GeneratorId::ALL {
            assert_eq!(at(a, a), Zero);
            for b in GeneratorId::ALL {
                let flipped = match at(a, b) {
                    Zero => Zero,
                    Plus(k) => Minus(k),
                    Minus(k) => Plus(k),
                };
                assert_eq!(at(b, a), flipped);
            }
        }
    }

    #[test]
    fn bracket_antisymmetry_is_exact_in_floating_point() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let mut a = Mat4::ZERO;
            let mut b = Mat4::ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    a.0[i][j] = rng.random_range(-2.0..2.0);
                    b.0[i][j] = rng.random_range(-2.0..2.0);
                }
            }
            let x = LinearField::new(a);
            let y = LinearField::new(b);
            let xy = bracket(&x, &y).matrix;
            let yx = bracket(&y, &x).matrix;
            assert_eq!(xy, -yx);
        }
    }

    #[test]
    fn jacobi_identity() {
        let gens: Vec<LinearField> = GeneratorId::ALL.iter().map(|id| generator(*id)).collect();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let lhs = bracket(&bracket(x, y), z).matrix
                        + bracket(&bracket(y, z), x).matrix
                        + bracket(&bracket(z, x), y).matrix;
                    assert_eq!(lhs, Mat4::ZERO);
                }
            }
        }
    }

    #[test]
    fn closed_subalgebras() {
        use GeneratorId::*;
        // among two element sets, exactly the three commuting pairs
        let mut closed_pairs = Vec::new();
        for i in 0..6 {
            for j in (i + 1)..6 {
                let set = [GeneratorId::ALL[i], GeneratorId::ALL[j]];
                if is_closed_subalgebra(&set).unwrap() {
                    closed_pairs.push(set);
                }
            }
        }
        assert_eq!(closed_pairs, vec![[O1, O4], [O2, O3], [O5, O6]]);
        // a three element set closing onto itself
        assert!(is_closed_subalgebra(&[O1, O2, O6]).unwrap());
        assert!(!is_closed_subalgebra(&[O1, O2, O3]).unwrap());
        assert!(is_closed_subalgebra(&GeneratorId::ALL).unwrap());
        assert!(is_closed_subalgebra(&[O1]).unwrap());
        assert_eq!(is_closed_subalgebra(&[]), Err(KillingError::EmptySet));
    }

    #[test]
    fn table_rendering_is_stable() {
        let text = render_bracket_table(&bracket_table().unwrap());
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "[row, col]    O1    O2    O3    O4    O5    O6"
        );
        assert_eq!(
            lines.next().unwrap(),
            "O1             0    O6    O5     0    O3    O2"
        );
        assert_eq!(lines.count(), 5);
    }
}
