//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails; the process exits non-zero if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use shadow_markoff::dual::{check_shadow_equation, mutate_at, sigma_of_root, Slot};
use shadow_markoff::linear::{
    barycenter_check, shadow_at, shadow_at_by_path, transfer_matrix, transfer_matrix_by_products, ShadowVector,
};
use shadow_markoff::positivity::constraints::{halfplanes_to_depth, ConstraintSet};
use shadow_markoff::positivity::geometry::{conjectured_quadrilateral, polygon_intersect, ChartPoint, ConvexPolygon};
use shadow_markoff::positivity::sweep::{default_bbox, default_spacing, grid_scan, summarize, DEFAULT_SWEEP_DEPTH};
use shadow_markoff::positivity::witness::{find_witness_for_root, is_positive_to_depth, replay_path, DEFAULT_DIGIT_BUDGET};
use shadow_markoff::rational::{int, parse_rational, ratio, Rational};
use shadow_markoff::sequences::{double_even_fibonacci, even_pell, fibonacci, pell, shadow_fib_branch_reference};
use shadow_markoff::tree::{branch_sequence, build_tree, Move, MovePath, SixTuple};

const PRINTED_PATH: &str = "[[1, 0, 1, 0, 1, 1],
 [1, 1, 1, 0, 2, 2],
 [1, 1, 2, 2, 5, 10],
 [1, 1, 5, 10, 13, 38],
 [1, 1, 13, 38, 34, 130],
 [1, 1, 34, 130, 89, 420]]";

const PRINTED_TREE: &str = "[[1, 1, 2, 2, 5, 10],
 [[1, 1, 5, 10, 13, 38],
  [[1, 1, 13, 38, 34, 130], [], []],
  [[13, 38, 5, 10, 194, 894], [], []]],
 [[5, 10, 2, 2, 29, 79],
  [[5, 10, 29, 79, 433, 1908], [], []],
  [[29, 79, 2, 2, 169, 580], [], []]]]";

type Check = Result<String, String>;

/// Root shadows and `(body, shadow)` pairs.
type SpotTree = ([i64; 3], &'static [(i64, i64)]);

type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_shadow-markoff"))
        .args(args)
        .output()
        .expect("run the shadow-markoff binary");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn within_relative(value: &Rational, target: &Rational, tolerance: &Rational) -> bool {
    (value - target).abs() <= target.abs() * tolerance
}

fn criterion_1() -> Check {
    let (code, out) = cli(&["path", "--root", "0,0,1", "--word", "lll"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(squash(&out) == squash(PRINTED_PATH), || format!("got {out}"))?;
    Ok("six rows match".into())
}

fn criterion_2() -> Check {
    let (code, out) = cli(&["tree", "--root", "0,0,1", "--height", "3"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(squash(&out) == squash(PRINTED_TREE), || format!("got {out}"))?;
    Ok("nested list matches".into())
}

fn replay_gamma(root: (&str, &str, &str), word: &str) -> Rational {
    let v = ShadowVector::new(
        parse_rational(root.0).unwrap(),
        parse_rational(root.1).unwrap(),
        parse_rational(root.2).unwrap(),
    );
    let rows = replay_path(&v, &word.parse().unwrap(), DEFAULT_DIGIT_BUDGET).unwrap();
    rows.last().unwrap().gamma.clone()
}

fn criterion_3() -> Check {
    let one_percent = ratio(1, 100);
    let big = |mantissa: i64, exp: u32| Rational::from_integer(BigInt::from(mantissa) * BigInt::from(10).pow(exp));

    let g1 = replay_gamma(("1", "9/10", "1"), "rlrlrlr");
    ensure(g1.is_negative() && within_relative(&g1, &-big(698, 31), &one_percent), || {
        format!("rlrlrlr gave {g1}")
    })?;
    let g2 = replay_gamma(("1", "11/10", "1"), "llllrrrrrrrrr");
    ensure(g2.is_negative() && within_relative(&g2, &-big(138, 21), &one_percent), || {
        format!("llllrrrrrrrrr gave {g2}")
    })?;
    let g3 = replay_gamma(("11/10", "1", "1"), "llllrr");
    ensure((&g3 - ratio(-777618, 10)).abs() <= ratio(1, 2), || format!("llllrr gave {g3}"))?;
    Ok(format!("gammas {g1}, {g2}, {g3}"))
}

/// Third shadow of the unique node whose third body is `body`, searched
/// among the root, the node after `r`, and a tree of height 4.
fn shadow_of_body(root: [i64; 3], body: i64) -> Result<Rational, String> {
    let [a, b, c] = root.map(int);
    let start = SixTuple::root(a.clone(), b.clone(), c.clone());
    let after_right = start.step(Move::Right).map_err(|e| e.to_string())?;
    let tree = build_tree(a, b, c, 4).map_err(|e| e.to_string())?;
    let hits: Vec<Rational> = [&start, &after_right]
        .into_iter()
        .chain(tree.nodes_breadth_first().into_iter().map(|(_, n)| n))
        .filter(|n| n.c == int(body))
        .map(|n| n.gamma.clone())
        .collect();
    match hits.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(format!("{} nodes with body {body}", hits.len())),
    }
}

fn criterion_4() -> Check {
    // (body, printed shadow) pairs
    let trees: [SpotTree; 3] = [
        (
            [0, 0, 1],
            &[(5, 10), (13, 38), (34, 130), (89, 420), (194, 894), (433, 1908), (169, 580), (1325, 8503),
              (7561, 54450), (2897, 18222), (6466, 39366), (37666, 256050), (14701, 85610), (985, 4077)],
        ),
        (
            [1, 0, 2],
            &[(5, 12), (13, 49), (29, 70), (34, 174), (194, 1006), (433, 3276), (169, 408), (89, 575),
              (1325, 10456), (7561, 60174), (2897, 19115), (6466, 33878), (37666, 197406), (14701, 56281), (985, 2378)],
        ),
        (
            [0, 2, 1],
            &[(1, 1), (2, 6), (5, 16), (13, 42), (29, 155), (34, 110), (194, 1058), (433, 3276), (169, 1262),
              (89, 288), (1325, 7247), (7561, 58124), (2897, 22230), (6466, 63256), (37666, 448676), (14701, 173670), (985, 9445)],
        ),
    ];
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (root, spots) in trees {
        for &(body, printed) in spots {
            checked += 1;
            let got = shadow_of_body(root, body)?;
            if got != int(printed) {
                mismatches.push(format!("{root:?} node {body}: printed {printed}, computed {got}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("{checked} spot values"))
}

fn branch_shadows(root: [i64; 3], direction: Move, count: usize) -> Vec<BigInt> {
    let [a, b, c] = root.map(int);
    branch_sequence(a, b, c, direction, count)
        .unwrap()
        .into_iter()
        .map(|(_, g)| g.to_integer())
        .collect()
}

fn criterion_5() -> Check {
    let terms = 15;
    let pell_branch = branch_shadows([1, 0, 2], Move::Right, terms);
    let expected: Vec<BigInt> = (2..2 + terms).map(even_pell).collect();
    ensure(pell_branch == expected, || format!("(1:0:2) right branch {pell_branch:?}"))?;

    let fib_branch = branch_shadows([0, 2, 1], Move::Left, terms);
    let expected: Vec<BigInt> = (2..2 + terms).map(double_even_fibonacci).collect();
    ensure(fib_branch == expected, || format!("(0:2:1) left branch {fib_branch:?}"))?;

    // the first two golden terms precede the branch
    let golden: Vec<BigInt> = (0..8).map(|n| shadow_fib_branch_reference(n).unwrap()).collect();
    let expected: Vec<BigInt> = [0, 2, 10, 38, 130, 420, 1308, 3970].map(BigInt::from).to_vec();
    ensure(golden == expected, || format!("golden {golden:?}"))?;
    let branch = branch_shadows([0, 0, 1], Move::Left, 6);
    ensure(branch[..] == expected[2..], || format!("(0:0:1) left branch {branch:?}"))?;
    Ok(format!("{terms} even Pell, {terms} 2F(2n+2), 8 goldens"))
}

fn criterion_6() -> Check {
    let height = 12;
    let tree = build_tree(int(1), int(1), int(1), height).map_err(|e| e.to_string())?;
    let start = SixTuple::root(int(1), int(1), int(1));
    let after_right = start.step(Move::Right).unwrap();
    let nodes = tree.nodes_breadth_first();
    let all = [&start, &after_right].into_iter().chain(nodes.iter().map(|(_, n)| *n));
    let mut count = 0;
    for node in all {
        count += 1;
        ensure(node.bodies() == node.shadows(), || format!("node {node}"))?;
    }
    Ok(format!("{count} nodes"))
}

fn criterion_7() -> Check {
    let height = 12;
    let mut count = 0;
    for root in [[0, 0, 1], [1, 0, 2], [0, 2, 1], [1, 1, 1]] {
        let [a, b, c] = root.map(int);
        let sigma = sigma_of_root(&a, &b, &c);
        let start = SixTuple::root(a.clone(), b.clone(), c.clone());
        let after_right = start.step(Move::Right).unwrap();
        let tree = build_tree(a, b, c, height).map_err(|e| e.to_string())?;
        let nodes = tree.nodes_breadth_first();
        for node in [&start, &after_right].into_iter().chain(nodes.iter().map(|(_, n)| *n)) {
            count += 1;
            ensure(check_shadow_equation(&node.to_triple(), &sigma), || {
                format!("{root:?} node {node}")
            })?;
        }
    }
    Ok(format!("{count} nodes over four vertex trees"))
}

fn sample<S: Strategy>(runner: &mut TestRunner, strategy: &S) -> S::Value {
    strategy.new_tree(runner).expect("strategy").current()
}

fn rational_in(lo: i64, hi: i64, max_denom: i64) -> impl Strategy<Value = Rational> {
    (1..=max_denom).prop_flat_map(move |q| (lo * q..=hi * q).prop_map(move |n| ratio(n, q)))
}

fn word_up_to(max: usize) -> impl Strategy<Value = MovePath> {
    proptest::collection::vec(proptest::bool::ANY, 0..=max)
        .prop_map(|bits| MovePath(bits.into_iter().map(|l| if l { Move::Left } else { Move::Right }).collect()))
}

fn criterion_8() -> Check {
    let mut runner = TestRunner::deterministic();
    let trials = 200;
    let coordinate = rational_in(-2, 3, 12);

    // mutation involution at random nodes
    for _ in 0..trials {
        let root = ShadowVector::new(sample(&mut runner, &coordinate), sample(&mut runner, &coordinate), sample(&mut runner, &coordinate));
        let word = sample(&mut runner, &word_up_to(8));
        let node = shadow_markoff::tree::path(root.alpha.clone(), root.beta.clone(), root.gamma.clone(), &word)
            .map_err(|e| e.to_string())?
            .pop()
            .unwrap()
            .to_triple();
        for slot in Slot::ALL {
            let back = mutate_at(&mutate_at(&node, slot).unwrap(), slot).unwrap();
            ensure(back == node, || format!("involution fails at word {word:?} slot {slot:?}"))?;
        }
    }

    // linearity: matrix route against path replay
    for _ in 0..trials {
        let word = sample(&mut runner, &word_up_to(10));
        let root = ShadowVector::new(sample(&mut runner, &coordinate), sample(&mut runner, &coordinate), sample(&mut runner, &coordinate));
        let by_path = shadow_at_by_path(&word, &root).map_err(|e| e.to_string())?;
        ensure(shadow_at(&word, &root) == by_path, || format!("linearity fails at word {word}"))?;
        ensure(
            Ok(transfer_matrix(&word)) == transfer_matrix_by_products(&word),
            || format!("matrix routes disagree at word {word}"),
        )?;
    }

    // convexity of the depth-10 positive set
    let depth = 10;
    let in_square = rational_in(0, 2, 12);
    let positive_point = |runner: &mut TestRunner| loop {
        let p = ChartPoint::new(sample(runner, &in_square), sample(runner, &in_square));
        if is_positive_to_depth(&p, depth) {
            return p;
        }
    };
    for _ in 0..trials {
        let p1 = positive_point(&mut runner);
        let p2 = positive_point(&mut runner);
        let lambda = sample(&mut runner, &rational_in(0, 1, 16));
        let mu = Rational::one() - &lambda;
        let combined = ChartPoint::new(
            &p1.alpha * &lambda + &p2.alpha * &mu,
            &p1.beta * &lambda + &p2.beta * &mu,
        );
        ensure(is_positive_to_depth(&combined, depth), || {
            format!("{lambda}·{p1} + {mu}·{p2} has a witness")
        })?;
        let word = sample(&mut runner, &word_up_to(depth));
        ensure(
            barycenter_check(&p1.to_root(), &p2.to_root(), &lambda, &mu, &word).map_err(|e| e.to_string())?,
            || format!("barycenter fails at word {word}"),
        )?;
    }

    // half-plane soundness at depth 8
    let depth = 8;
    let set = ConstraintSet::build(depth);
    let chart = rational_in(-1, 3, 20);
    for _ in 0..trials {
        let p = ChartPoint::new(sample(&mut runner, &chart), sample(&mut runner, &chart));
        let direct = find_witness_for_root(&p.to_root(), depth);
        ensure(set.witness(&p) == direct, || format!("half-planes and search disagree at {p}"))?;
    }

    // nested outer polygons containing the four vertices
    let bbox = ConvexPolygon::rectangle(int(-1), int(3), int(-1), int(3)).unwrap();
    let vertices = conjectured_quadrilateral().vertices().to_vec();
    ensure(vertices.len() == 4, || "quadrilateral has four vertices".into())?;
    let mut previous = bbox.clone();
    for d in 1..=8 {
        let outer = polygon_intersect(&halfplanes_to_depth(d), &bbox).map_err(|e| e.to_string())?;
        ensure(previous.contains_polygon(&outer), || format!("depth {d} polygon not nested"))?;
        ensure(vertices.iter().all(|v| outer.contains(v)), || format!("depth {d} polygon misses a vertex"))?;
        previous = outer;
    }
    Ok(format!("{trials} trials per property, polygons nested for depths 1..8"))
}

fn criterion_9() -> Check {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().map_err(|e| e.to_string())?;
    let rows = pool
        .install(|| grid_scan(&default_bbox(), &default_spacing(), DEFAULT_SWEEP_DEPTH))
        .map_err(|e| e.to_string())?;
    let margin = ratio(1, 10);
    let summary = summarize(&rows, &margin);
    let interior_bad = summary.interior_negative.len();
    let far_positive = summary.far_exterior_positive.len();
    let detail = format!(
        "{} points, {} interior with witness, {} exterior beyond margin without witness",
        summary.total, interior_bad, far_positive
    );
    ensure(interior_bad == 0 && far_positive == 0, || {
        let examples: Vec<String> = summary
            .interior_negative
            .iter()
            .chain(&summary.far_exterior_positive)
            .take(4)
            .map(ToString::to_string)
            .collect();
        format!("{detail}; e.g. {}", examples.join(", "))
    })?;
    Ok(detail)
}

fn criterion_10() -> Check {
    let terms = 15;
    let bodies = |direction| -> Vec<BigInt> {
        branch_sequence(Rational::zero(), Rational::zero(), Rational::one(), direction, terms)
            .unwrap()
            .into_iter()
            .map(|(b, _)| b.to_integer())
            .collect()
    };
    let left = bodies(Move::Left);
    let expected: Vec<BigInt> = (2..2 + terms).map(|k| fibonacci(2 * k + 1)).collect();
    ensure(left == expected, || format!("left bodies {left:?}"))?;
    let right = bodies(Move::Right);
    let expected: Vec<BigInt> = (1..1 + terms).map(|k| pell(2 * k + 1)).collect();
    ensure(right == expected, || format!("right bodies {right:?}"))?;
    Ok(format!("{terms} odd Fibonacci and {terms} odd Pell bodies"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden path list", Duration::from_secs(1), criterion_1),
        ("golden tree", Duration::from_secs(1), criterion_2),
        ("witness replays", Duration::from_secs(3), criterion_3),
        ("vertex-tree spot values", Duration::from_secs(3), criterion_4),
        ("sequence identities", Duration::from_secs(1), criterion_5),
        ("double tree", Duration::from_secs(10), criterion_6),
        ("equation invariant", Duration::from_secs(30), criterion_7),
        ("property suites", Duration::from_secs(120), criterion_8),
        ("region sweep", Duration::from_secs(600), criterion_9),
        ("classical branches", Duration::from_secs(1), criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", 10 - failed, 10);
    if failed > 0 {
        std::process::exit(1);
    }
}
