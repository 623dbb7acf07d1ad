//! Positivity to a given depth as a finite system of half-planes.
//!
//! Each row of a node's transfer matrix, read in the chart `γ = 1`, is a
//! linear function of `(α, β)` whose sign is the sign of one shadow of that
//! node. Collecting the rows of every node to depth `d` gives a system
//! whose solution set is exactly the set of points positive to depth `d`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use rayon::prelude::*;

use crate::dual::Slot;
use crate::linear::frames_to_depth;
use crate::rational::Rational;
use crate::tree::{Move, MovePath};

use super::geometry::{ChartPoint, HalfPlane};
use super::witness::NegativityWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub halfplane: HalfPlane,
    /// First node (in breadth-first order) carrying this row.
    pub word: MovePath,
    pub step_index: usize,
    pub slot: Slot,
    /// `(u, v, w)` scaled to integers by a positive factor.
    scaled: [BigInt; 3],
}

impl Constraint {
    fn new(row: &[BigInt; 3], frame: &IntFrame, slot: Slot) -> Self {
        let halfplane = HalfPlane::new(
            Rational::from_integer(row[0].clone()),
            Rational::from_integer(row[1].clone()),
            Rational::from_integer(row[2].clone()),
        );
        Self {
            halfplane,
            word: frame.word.clone(),
            step_index: frame.step_index,
            slot,
            scaled: row.clone(),
        }
    }

    /// Primitive integer direction; equal keys describe the same half-plane.
    fn key(&self) -> [BigInt; 3] {
        let g = self
            .scaled
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return self.scaled.clone();
        }
        self.scaled.clone().map(|x| x / &g)
    }

    fn is_violated_at(&self, p: &ScaledPoint) -> bool {
        let [u, v, w] = &self.scaled;
        (u * &p.x + v * &p.y + w * &p.denom).is_negative()
    }

    pub fn witness_at(&self, p: &ChartPoint) -> NegativityWitness {
        NegativityWitness {
            word: self.word.clone(),
            step_index: self.step_index,
            slot: self.slot,
            value: self.halfplane.evaluate(p),
        }
    }
}

/// `(x/denom, y/denom)` over a common positive denominator.
pub(crate) struct ScaledPoint {
    x: BigInt,
    y: BigInt,
    denom: BigInt,
}

impl ScaledPoint {
    pub(crate) fn new(p: &ChartPoint) -> Self {
        let denom = p.alpha.denom().lcm(p.beta.denom());
        let scale = Rational::from_integer(denom.clone());
        Self {
            x: (&p.alpha * &scale).to_integer(),
            y: (&p.beta * &scale).to_integer(),
            denom,
        }
    }
}

/// Integer twin of [`crate::linear::NodeFrame`].
///
/// Column `j` of a node's matrix is the node's shadow vector for the root
/// `e_j`; integer roots have integer shadows on the whole tree, so every
/// division below is exact.
#[derive(Clone, Debug)]
struct IntFrame {
    step_index: usize,
    word: MovePath,
    bodies: [BigInt; 3],
    rows: [[BigInt; 3]; 3],
}

impl IntFrame {
    fn root() -> Self {
        let one = BigInt::one;
        let zero = BigInt::zero;
        Self {
            step_index: 0,
            word: MovePath::empty(),
            bodies: [one(), one(), one()],
            rows: [[one(), zero(), zero()], [zero(), one(), zero()], [zero(), zero(), one()]],
        }
    }

    fn advance(&self, mv: Move) -> Self {
        let [a, b, c] = &self.bodies;
        let [r0, r1, r2] = &self.rows;
        let exact = |k0: &BigInt, k1: &BigInt, k2: &BigInt, d: &BigInt| -> [BigInt; 3] {
            std::array::from_fn(|j| {
                let (q, r) = (k0 * &r0[j] + k1 * &r1[j] + k2 * &r2[j]).div_rem(d);
                debug_assert!(r.is_zero(), "transfer matrix entries are integers");
                q
            })
        };
        let (bodies, rows) = match mv {
            Move::Left => {
                let corner = (a * a + c * c) / b;
                let row = exact(&(a * 2u32), &-&corner, &(c * 2u32), b);
                ([a.clone(), c.clone(), corner], [r0.clone(), r2.clone(), row])
            }
            Move::Right => {
                let corner = (b * b + c * c) / a;
                let row = exact(&-&corner, &(b * 2u32), &(c * 2u32), a);
                ([c.clone(), b.clone(), corner], [r2.clone(), r1.clone(), row])
            }
        };
        let word = if self.step_index >= 2 {
            self.word.child(mv)
        } else {
            self.word.clone()
        };
        Self {
            step_index: self.step_index + 1,
            word,
            bodies,
            rows,
        }
    }
}

/// Deduplicated half-planes for every node to a fixed depth, in
/// breadth-first order of first appearance.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    depth: usize,
    constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn build(depth: usize) -> Self {
        let mut seen = HashSet::new();
        let mut constraints = Vec::new();
        let mut push_frame = |frame: &IntFrame| {
            for slot in Slot::ALL {
                let c = Constraint::new(&frame.rows[slot.index()], frame, slot);
                if seen.insert(c.key()) {
                    constraints.push(c);
                }
            }
        };
        let root = IntFrame::root();
        let right = root.advance(Move::Right);
        let prefix = right.advance(Move::Left);
        push_frame(&root);
        push_frame(&right);
        let mut level = vec![prefix];
        for d in 0..=depth {
            level.iter().for_each(&mut push_frame);
            if d < depth {
                level = level
                    .par_iter()
                    .flat_map_iter(|f| [f.advance(Move::Left), f.advance(Move::Right)])
                    .collect();
            }
        }
        Self { depth, constraints }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.constraints.iter().map(|c| c.halfplane.clone()).collect()
    }

    /// First violated constraint in breadth-first order, as a witness.
    pub fn witness(&self, p: &ChartPoint) -> Option<NegativityWitness> {
        let scaled = ScaledPoint::new(p);
        self.constraints
            .iter()
            .find(|c| c.is_violated_at(&scaled))
            .map(|c| c.witness_at(p))
    }

    pub fn is_satisfied(&self, p: &ChartPoint) -> bool {
        self.witness(p).is_none()
    }
}

/// Half-planes `u·α + v·β + w ≥ 0`, one per distinct shadow row of the nodes
/// with word length ≤ `depth` (prefix nodes included).
pub fn halfplanes_to_depth(depth: usize) -> Vec<HalfPlane> {
    ConstraintSet::build(depth).halfplanes()
}

/// Rows of every node without deduplication, for counting.
pub fn raw_row_count(depth: usize) -> usize {
    3 * frames_to_depth(depth).len()
}
