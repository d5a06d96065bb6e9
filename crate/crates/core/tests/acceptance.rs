//! End-to-end checks, one line per criterion. Runs with its own harness so
//! the report is always printed.

use std::collections::HashSet;
use std::process::ExitCode;

use rand::Rng;
use thompson_core::annular::{are_conjugate, AnnularStrandDiagram, LoopKind};
use thompson_core::binary::{BinaryWord, TailWord};
use thompson_core::dyadic::{pow2, q, qi, Q};
use thompson_core::generators::{four_fixed_point_element, x0, x1, Word};
use thompson_core::mather::{
    circle_map_from_cylindrical, cylindrical_from_annular, mather_equivalent, mather_invariant,
    mather_invariant_with_iterations, minimal_iterations,
};
use thompson_core::orbits::{in_same_orbit_rational, multipoint_transporter, pipeline_element};
use thompson_core::plmap::{dyadic_rearrangement, plog, plog_inv, FixedInterval, PLMap};
use thompson_core::random;
use thompson_core::strand::StrandDiagram;
use thompson_core::tree::Tree;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Distinct elements among words of length at most `len`, shortest word first.
fn corpus(len: usize) -> Vec<(Word, PLMap)> {
    let mut seen = HashSet::new();
    Word::all_up_to(len)
        .into_iter()
        .filter_map(|w| {
            let f = w.pl_map();
            seen.insert(f.clone()).then_some((w, f))
        })
        .collect()
}

fn least_rotation(w: &BinaryWord) -> String {
    let w = w.primitive_root();
    (0..w.len().max(1)).map(|k| w.rotated(k).to_string()).min().unwrap_or_default()
}

/// Fixed-interval count, sorted slope exponents, sorted tails up to rotation.
fn analytic_invariants(f: &PLMap) -> (usize, Vec<i64>, Vec<String>) {
    let fis = f.fixed_intervals().expect("square map");
    let mut slopes = Vec::new();
    let mut tails = Vec::new();
    for fi in &fis {
        if let Some(c) = fi.as_cantor_point() {
            slopes.push(c.slope_exp);
            tails.push(least_rotation(c.tail()));
        }
    }
    slopes.sort();
    tails.sort();
    (fis.len(), slopes, tails)
}

/// `[0, 1] -> [0, k]` sending the leaf intervals of `t` onto unit intervals.
fn tree_map(t: &Tree) -> PLMap {
    let leaves = t.leaf_intervals(&qi(0), &qi(1));
    let mut pts: Vec<(Q, Q)> = leaves.iter().enumerate().map(|(i, (a, _))| (a.clone(), qi(i as i64))).collect();
    pts.push((qi(1), qi(leaves.len() as i64)));
    PLMap::new(pts).unwrap()
}

fn correspondence() -> Outcome {
    let words = Word::all_up_to(5);
    for w in &words {
        let f = w.pl_map();
        let a = w.diagram().reduce();
        let b = StrandDiagram::from_pl_map(&f).map_err(err)?;
        check(a.equal_reduced(&b).map_err(err)?, || format!("{w}: reduced diagrams differ"))?;
        check(b.to_pl_map().map_err(err)? == f, || format!("{w}: from_pl_map does not invert"))?;
        check(a.to_pl_map().map_err(err)? == f, || format!("{w}: reduced word diagram has the wrong map"))?;
    }
    Ok(format!("{} words", words.len()))
}

fn stack_machine() -> Outcome {
    let mut rng = random::rng(2);
    for i in 0..100 {
        let (d, f) = random::diagram_with_map(&mut rng);
        let m = qi(d.source_count() as i64);
        for _ in 0..100 {
            let depth = rng.gen_range(0..10);
            let x = random::dyadic(&mut rng, &qi(0), &m, depth);
            let a = d.evaluate_at(&x).map_err(err)?;
            let b = f.evaluate(&x).map_err(err)?;
            check(a == b, || format!("diagram {i} at {x}: {a} against {b}"))?;
        }
    }
    Ok("100 diagrams x 100 points".into())
}

fn confluence() -> Outcome {
    let mut rng = random::rng(3);
    let mut moves = 0;
    for i in 0..100 {
        let d = random::diagram(&mut rng);
        let a = d.reduce_randomly(&mut rng);
        let b = d.reduce_randomly(&mut rng);
        moves += d.graph().vertex_count() - a.graph().vertex_count();
        check(a.is_reduced() && b.is_reduced(), || format!("diagram {i}: not reduced"))?;
        check(a.equal_reduced(&b).map_err(err)?, || format!("diagram {i}: two orders disagree"))?;
        check(a.equal_reduced(&d.reduce()).map_err(err)?, || format!("diagram {i}: worklist disagrees"))?;
    }
    Ok(format!("100 diagrams, {moves} vertices removed"))
}

fn conjugacy_soundness() -> Outcome {
    let mut rng = random::rng(4);
    for i in 0..200 {
        let f = random::word(&mut rng, 5).pl_map();
        let g = random::word(&mut rng, 5).pl_map();
        let h = g.invert().compose(&f).and_then(|p| p.compose(&g)).map_err(err)?;
        check(are_conjugate(&f, &h).map_err(err)?, || format!("pair {i}: {f} and {h}"))?;
    }
    // An element of the groupoid on [0, 4] and its images in F under three
    // different trees: all must be conjugate.
    let dom = [q(0, 1), q(1, 2), qi(1), qi(2), qi(3), q(7, 2), qi(4)];
    let ran = [q(0, 1), qi(1), q(3, 2), qi(2), q(5, 2), qi(3), qi(4)];
    let f = PLMap::new(dom.into_iter().zip(ran).collect()).map_err(err)?;
    let key = AnnularStrandDiagram::of_element(&f).and_then(|a| a.canonical_key()).map_err(err)?;
    for t in ["((**)(**))", "(((**)*)*)", "(*(*(**)))"] {
        let s = tree_map(&t.parse::<Tree>().map_err(err)?);
        let g = s.compose(&f).and_then(|p| p.compose(&s.invert())).map_err(err)?;
        let k = AnnularStrandDiagram::of_element(&g).and_then(|a| a.canonical_key()).map_err(err)?;
        check(k == key, || format!("conjugate through {t} has a different closure"))?;
    }
    Ok("200 random pairs, 3 tree conjugates".into())
}

fn conjugacy_separation() -> Outcome {
    let elems = corpus(4);
    let invs: Vec<_> = elems.iter().map(|(_, f)| analytic_invariants(f)).collect();
    let mut separated = 0;
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if invs[i] != invs[j] {
                separated += 1;
                let c = are_conjugate(&elems[i].1, &elems[j].1).map_err(err)?;
                check(!c, || format!("{} and {} have different invariants", elems[i].0, elems[j].0))?;
            }
        }
    }
    check(!are_conjugate(&x0(), &x1()).map_err(err)?, || "x0 and x1 reported conjugate".into())?;
    Ok(format!("{} elements, {separated} separated pairs", elems.len()))
}

fn loops_match_fixed_points() -> Outcome {
    let elems = corpus(4);
    let mut points = 0;
    for (w, f) in &elems {
        let a = AnnularStrandDiagram::of_element(f).map_err(err)?;
        let analytic = f.fixed_intervals().map_err(err)?;
        let loops = a.fixed_intervals_from_loops(f).map_err(|e| format!("{w}: {e}"))?;
        check(loops == analytic, || format!("{w}: loops give {loops:?}"))?;
        let infos = a.classify_loops().map_err(err)?;
        for (l, fi) in infos.iter().zip(&analytic) {
            if let FixedInterval::CantorPoint(c) = fi {
                points += 1;
                check(l.slope_exp() == c.slope_exp, || format!("{w}: slope mismatch"))?;
                check(l.tail().primitive_root().is_rotation_of(c.tail()), || format!("{w}: tail mismatch"))?;
            }
        }
    }
    let f = four_fixed_point_element();
    let a = AnnularStrandDiagram::of_element(&f).map_err(err)?;
    let slopes: Vec<i64> = a
        .fixed_intervals_from_loops(&f)
        .map_err(err)?
        .iter()
        .filter_map(|fi| fi.as_cantor_point().map(|c| c.slope_exp))
        .collect();
    check(slopes == [-1, 2, -1, 1, -1], || format!("four fixed points give slopes {slopes:?}"))?;
    Ok(format!("{} elements, {points} isolated points; slopes 1/2, 4, 1/2|2, 1/2", elems.len()))
}

fn merge_loop_example() -> Outcome {
    let image = PLMap::new(vec![(qi(1), qi(1) + q(13, 16)), (qi(2), qi(1) + q(14, 16))]).map_err(err)?;
    let f = PLMap::glue(&[
        dyadic_rearrangement(&qi(0), &qi(1), &qi(0), &(qi(1) + q(13, 16))).map_err(err)?,
        image,
        dyadic_rearrangement(&qi(2), &qi(3), &(qi(1) + q(14, 16)), &qi(3)).map_err(err)?,
    ])
    .map_err(err)?;
    let a = AnnularStrandDiagram::of_element(&f).map_err(err)?;
    let tail: BinaryWord = "1101".parse().map_err(err)?;
    let loops = a.classify_loops().map_err(err)?;
    let l = loops
        .iter()
        .find(|l| l.kind == LoopKind::Merge && l.size == 4)
        .ok_or("no merge loop of size 4")?;
    check(l.slope_exp() == -4, || format!("loop slope 2^{}", l.slope_exp()))?;
    check(l.tail().is_rotation_of(&tail), || format!("loop reads ({})", l.tail()))?;
    let target = qi(1) + q(13, 15);
    let fis = a.fixed_intervals_from_loops(&f).map_err(err)?;
    let c = fis
        .iter()
        .filter_map(FixedInterval::as_cantor_point)
        .find(|c| c.value() == target)
        .ok_or("1 + 13/15 is not a fixed point")?;
    check(c.slope_exp == -4 && c.tail().is_rotation_of(&tail), || format!("{c}"))?;
    check(f.evaluate(&target).map_err(err)? == target, || "f moves 1 + 13/15".into())?;
    Ok("fixed point 1 + 13/15, slope 2^-4, tail (1101)".into())
}

struct Bumps {
    maps: Vec<PLMap>,
    keys: Vec<Vec<u8>>,
    annular: Vec<AnnularStrandDiagram>,
}

fn one_bump_corpus() -> Result<Bumps, String> {
    let maps: Vec<PLMap> = corpus(6).into_iter().map(|(_, f)| f).filter(PLMap::is_one_bump).collect();
    let annular: Vec<_> = maps.iter().map(AnnularStrandDiagram::of_element).collect::<Result<_, _>>().map_err(err)?;
    let keys = annular.iter().map(|a| a.canonical_key()).collect::<Result<_, _>>().map_err(err)?;
    Ok(Bumps { maps, keys, annular })
}

fn mather_decides_conjugacy(b: &Bumps) -> Outcome {
    let invs: Vec<_> = b.maps.iter().map(mather_invariant).collect::<Result<_, _>>().map_err(err)?;
    for (f, c) in b.maps.iter().zip(&invs) {
        let n = minimal_iterations(f).map_err(err)?;
        for k in 1..=2 {
            let d = mather_invariant_with_iterations(f, n + k).map_err(err)?;
            check(&d == c, || format!("{f}: N + {k} gives a different map"))?;
        }
    }
    // Classes by closure key; spot-check that the key comparison is the
    // conjugacy decision.
    let mut positive = 0;
    let mut checked = 0;
    for i in 0..b.maps.len() {
        for j in i + 1..b.maps.len() {
            let m = mather_equivalent(&invs[i], &invs[j]);
            let c = b.keys[i] == b.keys[j];
            check(m == c, || format!("{} and {}: mather {m}, conjugate {c}", b.maps[i], b.maps[j]))?;
            if m {
                positive += 1;
            }
            if m || (i * 31 + j) % 97 == 0 {
                checked += 1;
                check(are_conjugate(&b.maps[i], &b.maps[j]).map_err(err)? == c, || "closure keys disagree".into())?;
            }
        }
    }
    let classes: HashSet<&Vec<u8>> = b.keys.iter().collect();
    Ok(format!(
        "{} elements, {} classes, {positive} equivalent pairs, {checked} pairs rechecked",
        b.maps.len(),
        classes.len()
    ))
}

fn cylinder_correspondence(b: &Bumps) -> Outcome {
    for (f, a) in b.maps.iter().zip(&b.annular) {
        let cyl = cylindrical_from_annular(a).map_err(err)?;
        check(cyl.is_reduced(), || format!("{f}: cylinder not reduced"))?;
        let c = circle_map_from_cylindrical(&cyl, (0, 0)).map_err(err)?;
        let m = mather_invariant(f).map_err(err)?;
        check(mather_equivalent(&c, &m), || format!("{f}: cylinder gives {c}, invariant {m}"))?;
    }
    Ok(format!("{} elements", b.maps.len()))
}

fn same_tail_oracle(x: &Q, y: &Q) -> bool {
    let t = TailWord::from_rational_upper(x).unwrap();
    let u = TailWord::from_rational_upper(y).unwrap();
    match (t.is_dyadic(), u.is_dyadic()) {
        (true, true) => true,
        (false, false) => least_rotation(t.period()) == least_rotation(u.period()),
        _ => false,
    }
}

fn orbit_suite() -> Outcome {
    let mut rng = random::rng(10);
    let mut same = 0;
    for i in 0..100 {
        let x = random::unit_rational(&mut rng, 40);
        let y = if i % 2 == 0 {
            random::unit_rational(&mut rng, 40)
        } else {
            let j = rng.gen_range(0..5);
            let c = rng.gen_range(0..1i64 << j);
            (qi(c) + &x) / pow2(j)
        };
        let decided = in_same_orbit_rational(&x, &y).map_err(err)?;
        check(decided == same_tail_oracle(&x, &y), || format!("{x} and {y}"))?;
        if decided {
            same += 1;
            let t = TailWord::from_rational_upper(&x).unwrap();
            let u = TailWord::from_rational_upper(&y).unwrap();
            let g = pipeline_element(&t, &u).map_err(err)?;
            check(g.is_thompson_like() && g.domain_len() == Some(1) && g.range_len() == Some(1), || {
                format!("pipeline for {x} -> {y} is not in F")
            })?;
            check(g.evaluate(&x).map_err(err)? == y, || format!("pipeline misses {x} -> {y}"))?;
        }
    }
    let mut tuples = 0;
    for _ in 0..30 {
        let k = rng.gen_range(1..=3);
        let mut xs: Vec<Q> = (0..k).map(|_| random::unit_rational(&mut rng, 24)).collect();
        xs.sort();
        xs.dedup();
        let h = random::word(&mut rng, 5).pl_map();
        let ys: Vec<Q> = xs.iter().map(|x| h.evaluate(x).unwrap()).collect();
        let tw = |v: &[Q]| v.iter().map(|x| TailWord::from_rational_upper(x).unwrap()).collect::<Vec<_>>();
        let g = multipoint_transporter(&tw(&xs), &tw(&ys)).map_err(err)?;
        check(g.is_thompson_like() && g.domain_len() == Some(1) && g.range_len() == Some(1), || {
            "transporter is not in F".into()
        })?;
        for (x, y) in xs.iter().zip(&ys) {
            check(&g.evaluate(x).map_err(err)? == y, || format!("transporter misses {x} -> {y}"))?;
        }
        tuples += 1;
    }
    Ok(format!("100 pairs ({same} in one orbit), {tuples} tuples transported"))
}

fn plog_suite() -> Outcome {
    let mut rng = random::rng(11);
    for _ in 0..100 {
        let x = random::positive_dyadic(&mut rng);
        let y = plog(&x).map_err(err)?;
        check(plog_inv(&y) == x, || format!("round trip fails at {x}"))?;
    }
    for k in -8..=8 {
        check(plog(&pow2(k)).map_err(err)? == qi(k), || format!("plog(2^{k})"))?;
    }
    Ok("100 round trips, plog(2^k) = k for |k| <= 8".into())
}

fn main() -> ExitCode {
    let bumps = one_bump_corpus();
    let with_bumps = |run: fn(&Bumps) -> Outcome| match &bumps {
        Ok(b) => run(b),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("correspondence", correspondence()),
        ("stack machine", stack_machine()),
        ("confluence", confluence()),
        ("conjugacy soundness", conjugacy_soundness()),
        ("conjugacy separation", conjugacy_separation()),
        ("loops and fixed points", loops_match_fixed_points()),
        ("merge loop example", merge_loop_example()),
        ("mather invariant and conjugacy", with_bumps(mather_decides_conjugacy)),
        ("cylinder correspondence", with_bumps(cylinder_correspondence)),
        ("orbits", orbit_suite()),
        ("plog", plog_suite()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({e})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
