//! The shadow part of every mutation is linear in the shadows, with
//! coefficients that depend only on the classical bodies. Composing those
//! maps along a word gives a 3×3 rational matrix sending the root shadow
//! vector to the shadows of the node, in that node's slot order.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{path, Move, MovePath};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShadowVector {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl ShadowVector {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn from_ints(values: [i64; 3]) -> Self {
        let [a, b, c] = values.map(|v| Rational::from_integer(v.into()));
        Self::new(a, b, c)
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn to_array(&self) -> [Rational; 3] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone()]
    }

    pub fn from_array(values: [Rational; 3]) -> Self {
        let [a, b, c] = values;
        Self::new(a, b, c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.alpha * k, &self.beta * k, &self.gamma * k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.alpha + &other.alpha,
            &self.beta + &other.beta,
            &self.gamma + &other.gamma,
        )
    }

    pub fn is_nonnegative(&self) -> bool {
        let zero = Rational::zero();
        self.alpha >= zero && self.beta >= zero && self.gamma >= zero
    }
}

impl fmt::Display for ShadowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

pub type Matrix3 = [[Rational; 3]; 3];

pub fn identity() -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

pub fn mat_mul(lhs: &Matrix3, rhs: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(Rational::zero(), |acc, k| acc + &lhs[i][k] * &rhs[k][j])
        })
    })
}

pub fn determinant(m: &Matrix3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Matrix of one Sage move on the shadows, at classical bodies `(a, b, c)`.
pub fn move_matrix(mv: Move, bodies: [&Rational; 3]) -> Result<Matrix3> {
    let [a, b, c] = bodies;
    let two = Rational::from_integer(2.into());
    let zero = Rational::zero;
    let one = Rational::one;
    match mv {
        Move::Left => {
            if b.is_zero() {
                return Err(Error::DivisionByZero("left move with b = 0"));
            }
            let corner = (a * a + c * c) / b;
            Ok([
                [one(), zero(), zero()],
                [zero(), zero(), one()],
                [&two * a / b, -(corner / b), &two * c / b],
            ])
        }
        Move::Right => {
            if a.is_zero() {
                return Err(Error::DivisionByZero("right move with a = 0"));
            }
            let corner = (b * b + c * c) / a;
            Ok([
                [zero(), zero(), one()],
                [zero(), one(), zero()],
                [-(corner / a), &two * b / a, &two * c / a],
            ])
        }
    }
}

pub fn mat_vec(m: &Matrix3, v: &ShadowVector) -> ShadowVector {
    let x = v.to_array();
    ShadowVector::from_array(std::array::from_fn(|i| {
        (0..3).fold(Rational::zero(), |acc, k| acc + &m[i][k] * &x[k])
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: Matrix3,
    pub word: MovePath,
}

impl TransferMatrix {
    pub fn apply(&self, v: &ShadowVector) -> ShadowVector {
        mat_vec(&self.entries, v)
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.entries)
    }

    pub fn row(&self, i: usize) -> &[Rational; 3] {
        &self.entries[i]
    }

    /// Row-major CSV, header `row,c0,c1,c2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,c0,c1,c2\n");
        for (i, row) in self.entries.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", i, row[0], row[1], row[2]));
        }
        out
    }
}

/// A tree position together with its classical bodies and transfer matrix.
///
/// Children are derived from the parent in O(1) matrix work, so a
/// breadth-first sweep costs one row update per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeFrame {
    /// Index of this node in the `path` listing of its word.
    pub step_index: usize,
    pub word: MovePath,
    pub bodies: [Rational; 3],
    pub matrix: Matrix3,
}

impl NodeFrame {
    /// The root `(1, 1, 1)` with the identity matrix.
    pub fn root() -> Self {
        Self {
            step_index: 0,
            word: MovePath::empty(),
            bodies: [Rational::one(), Rational::one(), Rational::one()],
            matrix: identity(),
        }
    }

    /// The root followed by the mandatory right move.
    pub fn after_right() -> Self {
        Self::root().advance(Move::Right).expect("nonzero root bodies")
    }

    /// The node where free branching starts (empty word, `step_index` 2).
    pub fn prefix() -> Self {
        Self::after_right().advance(Move::Left).expect("nonzero bodies")
    }

    /// The three nodes every walk visits before branching.
    pub fn prefix_frames() -> [Self; 3] {
        let root = Self::root();
        let right = Self::after_right();
        let prefix = right.advance(Move::Left).expect("nonzero bodies");
        [root, right, prefix]
    }

    fn advance(&self, mv: Move) -> Result<Self> {
        let [a, b, c] = &self.bodies;
        let [r0, r1, r2] = &self.matrix;
        let two = Rational::from_integer(2.into());
        let combine = |k0: &Rational, k1: &Rational, k2: &Rational, d: &Rational| -> [Rational; 3] {
            std::array::from_fn(|j| (k0 * &r0[j] + k1 * &r1[j] + k2 * &r2[j]) / d)
        };
        let (bodies, matrix) = match mv {
            Move::Left => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero("left move with b = 0"));
                }
                let corner = (a * a + c * c) / b;
                let new_row = combine(&(&two * a), &-&corner, &(&two * c), b);
                ([a.clone(), c.clone(), corner], [r0.clone(), r2.clone(), new_row])
            }
            Move::Right => {
                if a.is_zero() {
                    return Err(Error::DivisionByZero("right move with a = 0"));
                }
                let corner = (b * b + c * c) / a;
                let new_row = combine(&-&corner, &(&two * b), &(&two * c), a);
                ([c.clone(), b.clone(), corner], [r2.clone(), r1.clone(), new_row])
            }
        };
        Ok(Self {
            step_index: self.step_index + 1,
            word: if self.step_index >= 2 {
                self.word.child(mv)
            } else {
                self.word.clone()
            },
            bodies,
            matrix,
        })
    }

    /// The child reached by a free move below the prefix.
    pub fn child(&self, mv: Move) -> Self {
        debug_assert!(self.step_index >= 2, "free moves start after the prefix");
        // bodies on the Markoff tree are positive
        self.advance(mv).expect("positive bodies")
    }

    pub fn transfer(&self) -> TransferMatrix {
        TransferMatrix {
            entries: self.matrix.clone(),
            word: self.word.clone(),
        }
    }
}

/// Frames for every node with word length ≤ `depth`, prefix nodes first, then
/// breadth-first with `l` before `r`.
pub fn frames_to_depth(depth: usize) -> Vec<NodeFrame> {
    let [root, right, prefix] = NodeFrame::prefix_frames();
    let mut out = vec![root, right];
    let mut level = vec![prefix];
    for d in 0..=depth {
        let next = if d < depth {
            level
                .iter()
                .flat_map(|f| [f.child(Move::Left), f.child(Move::Right)])
                .collect()
        } else {
            Vec::new()
        };
        out.append(&mut level);
        level = next;
    }
    out
}

/// `M(word)`, including the mandatory prefix.
pub fn transfer_matrix(word: &MovePath) -> TransferMatrix {
    word.moves()
        .iter()
        .fold(NodeFrame::prefix(), |frame, &mv| frame.child(mv))
        .transfer()
}

/// The same matrix as [`transfer_matrix`], built as a product of per-move matrices.
pub fn transfer_matrix_by_products(word: &MovePath) -> Result<TransferMatrix> {
    let mut bodies = [Rational::one(), Rational::one(), Rational::one()];
    let mut m = identity();
    for &mv in [Move::Right, Move::Left].iter().chain(word.moves()) {
        let step = move_matrix(mv, [&bodies[0], &bodies[1], &bodies[2]])?;
        m = mat_mul(&step, &m);
        let [a, b, c] = bodies;
        bodies = match mv {
            Move::Left => {
                let corner = (&a * &a + &c * &c) / &b;
                [a, c, corner]
            }
            Move::Right => {
                let corner = (&b * &b + &c * &c) / &a;
                [c, b, corner]
            }
        };
    }
    Ok(TransferMatrix {
        entries: m,
        word: word.clone(),
    })
}

pub fn shadow_at(word: &MovePath, v: &ShadowVector) -> ShadowVector {
    transfer_matrix(word).apply(v)
}

/// Shadows of the last row of `path`, for cross-checking [`shadow_at`].
pub fn shadow_at_by_path(word: &MovePath, v: &ShadowVector) -> Result<ShadowVector> {
    let rows = path(v.alpha.clone(), v.beta.clone(), v.gamma.clone(), word)?;
    let last = rows.last().expect("path is never empty");
    Ok(ShadowVector::new(
        last.alpha.clone(),
        last.beta.clone(),
        last.gamma.clone(),
    ))
}

/// Whether the shadow map commutes with the combination `λ·v1 + μ·v2`.
pub fn barycenter_check(
    v1: &ShadowVector,
    v2: &ShadowVector,
    lambda: &Rational,
    mu: &Rational,
    word: &MovePath,
) -> Result<bool> {
    if lambda + mu != Rational::one() {
        return Err(Error::Precondition(format!(
            "barycentric weights must sum to 1, got {lambda} + {mu}"
        )));
    }
    let combined = v1.scale(lambda).add(&v2.scale(mu));
    let lhs = shadow_at(word, &combined);
    let rhs = shadow_at(word, v1)
        .scale(lambda)
        .add(&shadow_at(word, v2).scale(mu));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::tree::{build_tree, SixTuple};
    use proptest::prelude::*;

    fn word(s: &str) -> MovePath {
        s.parse().unwrap()
    }

    fn ints(m: &Matrix3) -> Vec<Vec<Rational>> {
        m.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn bare_right_move_matrix() {
        let one = int(1);
        let m = move_matrix(Move::Right, [&one, &one, &one]).unwrap();
        let expected: Vec<Vec<Rational>> = [[0, 0, 1], [0, 1, 0], [-2, 2, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(ints(&m), expected);
    }

    #[test]
    fn prefix_matrix_reproduces_first_tree_node() {
        let v = ShadowVector::from_ints([0, 0, 1]);
        assert_eq!(shadow_at(&MovePath::empty(), &v), ShadowVector::from_ints([1, 2, 10]));
        assert_eq!(
            shadow_at(&word("l"), &ShadowVector::from_ints([0, 2, 1])),
            ShadowVector::from_ints([1, 16, 42])
        );
        let s = shadow_at(&MovePath::empty(), &ShadowVector::from_ints([0, 2, 1]));
        assert_eq!(s.gamma, int(16));
    }

    #[test]
    fn zero_vector_is_fixed() {
        for w in ["", "l", "rrl", "lrlrlr"] {
            assert_eq!(shadow_at(&word(w), &ShadowVector::zero()), ShadowVector::zero());
        }
    }

    #[test]
    fn unit_shadows_give_the_classical_bodies() {
        let ones = ShadowVector::from_ints([1, 1, 1]);
        for len in 0..=6 {
            for w in MovePath::all_of_length(len) {
                let rows = path(int(1), int(1), int(1), &w).unwrap();
                let last: &SixTuple = rows.last().unwrap();
                let bodies = ShadowVector::new(last.a.clone(), last.b.clone(), last.c.clone());
                assert_eq!(shadow_at(&w, &ones), bodies, "word {w}");
            }
        }
    }

    #[test]
    fn barycenter_examples() {
        let v1 = ShadowVector::from_ints([0, 0, 1]);
        let v2 = ShadowVector::from_ints([1, 1, 1]);
        let half = ratio(1, 2);
        assert!(barycenter_check(&v1, &v2, &half, &half, &word("rl")).unwrap());
        assert!(barycenter_check(&v1, &v1, &ratio(7, 3), &ratio(-4, 3), &word("lrr")).unwrap());
        let v1 = ShadowVector::from_ints([1, 0, 2]);
        let v2 = ShadowVector::from_ints([0, 2, 1]);
        assert!(barycenter_check(&v1, &v2, &ratio(1, 3), &ratio(2, 3), &word("llrr")).unwrap());
    }

    #[test]
    fn barycenter_with_mismatched_weights_fails() {
        let v = ShadowVector::from_ints([0, 0, 1]);
        assert!(matches!(
            barycenter_check(&v, &v, &ratio(1, 2), &ratio(1, 3), &MovePath::empty()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn frames_cover_the_tree_in_breadth_first_order() {
        let frames = frames_to_depth(3);
        assert_eq!(frames.len(), 2 + 15);
        let steps: Vec<usize> = frames.iter().map(|f| f.step_index).collect();
        assert_eq!(&steps[..4], &[0, 1, 2, 3]);
        let words: Vec<String> = frames[2..].iter().map(|f| f.word.to_string()).collect();
        assert_eq!(
            words,
            ["", "l", "r", "ll", "lr", "rl", "rr", "lll", "llr", "lrl", "lrr", "rll", "rlr", "rrl", "rrr"]
        );
        let tree = build_tree(int(0), int(0), int(1), 4).unwrap();
        let v = ShadowVector::from_ints([0, 0, 1]);
        for f in &frames[2..] {
            let node = tree.node_at(&f.word).unwrap();
            let bodies = [node.a.clone(), node.b.clone(), node.c.clone()];
            assert_eq!(f.bodies, bodies);
            assert_eq!(mat_vec(&f.matrix, &v), ShadowVector::new(node.alpha.clone(), node.beta.clone(), node.gamma.clone()));
        }
    }

    #[test]
    fn csv_dump() {
        let csv = transfer_matrix(&MovePath::empty()).to_csv();
        assert_eq!(csv, "row,c0,c1,c2\n0,0,0,1\n1,-2,2,2\n2,-8,3,10\n");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-25i64..=25, 1i64..=10).prop_map(|(n, q)| ratio(n, q))
    }

    fn vector() -> impl Strategy<Value = ShadowVector> {
        proptest::array::uniform3(small_rational()).prop_map(ShadowVector::from_array)
    }

    fn move_path(max: usize) -> impl Strategy<Value = MovePath> {
        proptest::collection::vec(prop_oneof![Just(Move::Left), Just(Move::Right)], 0..=max)
            .prop_map(MovePath)
    }

    fn weight() -> impl Strategy<Value = Rational> {
        (0i64..=12, 1i64..=12).prop_filter("λ ≤ 1", |(n, q)| n <= q).prop_map(|(n, q)| ratio(n, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matrix_and_path_agree(w in move_path(10), v in vector()) {
            prop_assert_eq!(shadow_at(&w, &v), shadow_at_by_path(&w, &v).unwrap());
        }

        #[test]
        fn cached_and_product_matrices_agree(w in move_path(10)) {
            let cached = transfer_matrix(&w);
            let product = transfer_matrix_by_products(&w).unwrap();
            prop_assert_eq!(&cached, &product);
            prop_assert!(!cached.determinant().is_zero());
            prop_assert!(cached.entries.iter().flatten().all(|e| e.is_integer()));
        }

        #[test]
        fn linearity_holds_for_any_weights(
            v1 in vector(), v2 in vector(), lambda in small_rational(), w in move_path(8),
        ) {
            let mu = Rational::one() - &lambda;
            prop_assert!(barycenter_check(&v1, &v2, &lambda, &mu, &w).unwrap());
        }

        #[test]
        fn nonnegativity_is_transported_to_barycenters(
            v1 in vector(), v2 in vector(), lambda in weight(), w in move_path(8),
        ) {
            let m = transfer_matrix(&w);
            let mu = Rational::one() - &lambda;
            if m.apply(&v1).is_nonnegative() && m.apply(&v2).is_nonnegative() {
                let mix = v1.scale(&lambda).add(&v2.scale(&mu));
                prop_assert!(m.apply(&mix).is_nonnegative());
            }
        }
    }
}
