//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use swarm_wilson::config::{make_config, Configuration};
use swarm_wilson::fixtures;
use swarm_wilson::graph::{Graph, Vertex, VertexSet};
use swarm_wilson::moves::{apply_move, enumerate_moves, is_valid, MoveSequence};
use swarm_wilson::oracle::{explore, oracle_label_group, DEFAULT_MAX_STATES};
use swarm_wilson::perm::{factorial, Factor, VertexPermutation};
use swarm_wilson::planner::{permuted, realize, relocate};
use swarm_wilson::verify::{
    connected_graphs, connected_supports, random_configuration, random_connected_graph, random_element, trees,
};
use swarm_wilson::wilson::wilson_group;

const BUDGET: usize = DEFAULT_MAX_STATES;
const SEED: u64 = 20_241_016;
const PROPERTY_CASES: usize = 1000;

type Check = Result<String, String>;

fn set(vs: &[Vertex]) -> VertexSet {
    vs.iter().copied().collect()
}

fn saturated(g: Graph) -> Configuration {
    Configuration::saturated(&Arc::new(g))
}

fn on(g: Graph, support: &[Vertex]) -> Configuration {
    Configuration::from_support(&Arc::new(g), &set(support)).unwrap()
}

fn label_group_size(c: &Configuration) -> BigUint {
    BigUint::from(oracle_label_group(c, BUDGET).expect("within budget").len())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cycle_criterion() -> Check {
    for n in 3..=8 {
        let c = saturated(fixtures::cycle(n));
        let states = explore(&c, BUDGET).unwrap().len();
        ensure(states == n, || format!("C{n}: {states} states"))?;
        let d = wilson_group(&c);
        let cyclic = matches!(d.factors(), [Factor::Cyclic(v)] if v.len() == n);
        ensure(cyclic && d.order() == BigUint::from(n), || format!("C{n}: analyzer {d}"))?;
    }
    Ok("C3..C8 rotate only".into())
}

fn tree_criterion() -> Check {
    let mut count = 0;
    for n in 1..=7 {
        for g in trees(n) {
            let c = saturated(g);
            let states = explore(&c, BUDGET).unwrap().len();
            ensure(states == 1, || format!("{}: {states} states", c.graph().name()))?;
            let order = wilson_group(&c).order();
            ensure(order == BigUint::from(1u32), || format!("{}: analyzer order {order}", c.graph().name()))?;
            count += 1;
        }
    }
    Ok(format!("{count} trees frozen"))
}

fn cycle_path_label_criterion() -> Check {
    let mut checked = 0;
    let mut failures = Vec::new();
    let graphs = (3..=8).map(fixtures::cycle).chain((1..=8).map(fixtures::path));
    for g in graphs {
        let g = Arc::new(g);
        let n = g.vertex_count();
        for k in 1..n {
            for s in connected_supports(&g, k) {
                let c = Configuration::from_support(&g, &s).unwrap();
                let group = oracle_label_group(&c, BUDGET).unwrap();
                let analyzer = wilson_group(&c).label_order();
                checked += 1;
                if group.len() != 1 || analyzer != BigUint::from(1u32) {
                    failures.push(format!("{} k={k} {:?}: oracle {} analyzer {analyzer}", g.name(), s, group.len()));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} supports with trivial label group"))
    } else {
        let shown: Vec<&String> = failures.iter().take(6).collect();
        Err(format!("{}/{checked} supports disagree, e.g. {:?}", failures.len(), shown))
    }
}

fn expect_order(c: &Configuration, order: u32, descriptor: &str) -> Check {
    let oracle = label_group_size(c);
    let d = wilson_group(c);
    ensure(oracle == BigUint::from(order), || format!("{}: oracle order {oracle}", c.graph().name()))?;
    ensure(d.to_string() == descriptor && d.label_order() == BigUint::from(order), || {
        format!("{}: analyzer {d}", c.graph().name())
    })?;
    Ok(format!("{} order {order}", c.graph().name()))
}

fn theta_criterion() -> Check {
    expect_order(&saturated(fixtures::theta5()), 120, "Sym{1,2,3,4,5}")
}

fn weak_block_criterion() -> Check {
    let a = expect_order(&saturated(fixtures::bowtie()), 60, "Alt{1,2,3,4,5}")?;
    let b = expect_order(&saturated(fixtures::tri_sq()), 720, "Sym{1,2,3,4,5,6}")?;
    Ok(format!("{a}, {b}"))
}

fn pendant_criterion() -> Check {
    let c = saturated(fixtures::pendant4());
    let r = expect_order(&c, 3, "Cyclic[1>2>3]")?;
    ensure(wilson_group(&c).fixed() == &set(&[4]), || "vertex 4 not fixed".into())?;
    Ok(r)
}

fn exhaustive_saturated_criterion() -> Check {
    let mut checked = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let c = saturated(g);
            let predicted = wilson_group(&c).order();
            let oracle = label_group_size(&c);
            ensure(predicted == oracle, || {
                format!("{:?}: analyzer {predicted} oracle {oracle}", c.graph().edges().collect::<Vec<_>>())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs, zero mismatches"))
}

fn star_criterion() -> Check {
    let c = on(fixtures::star4(), &[1, 2]);
    let swap = VertexPermutation::transposition(1, 2);
    let group = oracle_label_group(&c, BUDGET).unwrap();
    ensure(group == BTreeSet::from([VertexPermutation::identity(), swap.clone()]), || {
        format!("oracle group {group:?}")
    })?;
    let d = wilson_group(&c);
    ensure(d.label_order() == BigUint::from(2u32) && d.contains(&swap), || format!("analyzer {d}"))?;
    let plan = realize(&c, &swap, BUDGET).map_err(|e| e.to_string())?;
    ensure(plan.len() == 3, || format!("witness has {} moves", plan.len()))?;
    let (end, _) = plan.apply().map_err(|e| e.to_string())?;
    ensure(end == permuted(&c, &swap).unwrap(), || "witness lands elsewhere".into())?;
    let moves: Vec<String> = plan.moves.iter().map(|m| m.to_string()).collect();
    Ok(format!("S2, witness {}", moves.join(", ")))
}

fn curated_criterion() -> Check {
    let cases = [
        (on(fixtures::spider(), &[1, 2, 3]), 6u32),
        (on(fixtures::pendant4(), &[1, 2, 3]), 6),
        (on(fixtures::theta5_pendant(), &[1, 2, 3, 4, 5]), 120),
        (on(fixtures::p5(), &[1, 2, 3]), 1),
    ];
    for (c, order) in &cases {
        let oracle = label_group_size(c);
        let analyzer = wilson_group(c).label_order();
        ensure(oracle == BigUint::from(*order) && analyzer == oracle, || {
            format!("{} {:?}: oracle {oracle} analyzer {analyzer}", c.graph().name(), c.occupied())
        })?;
    }
    Ok("SPIDER 6, PENDANT4 6, THETA5_PENDANT 120, P5 1".into())
}

fn relocation_criterion() -> Check {
    let pairs = AtomicUsize::new(0);
    let failures = Mutex::new(Vec::new());
    let graphs: Vec<Arc<Graph>> = (1..=7).flat_map(connected_graphs).map(Arc::new).collect();
    graphs.par_iter().for_each(|g| {
        let n = g.vertex_count();
        for k in 1..=n {
            let supports = connected_supports(g, k);
            for s in &supports {
                let f0 = Configuration::from_support(g, s).unwrap();
                for t in &supports {
                    pairs.fetch_add(1, Ordering::Relaxed);
                    let outcome = relocate(&f0, t).map_err(|e| e.to_string()).and_then(|plan| {
                        let (end, _) = plan.apply().map_err(|e| e.to_string())?;
                        if &end.occupied() != t {
                            return Err("wrong support".into());
                        }
                        if plan.len() > k * n {
                            return Err(format!("{} moves", plan.len()));
                        }
                        Ok(())
                    });
                    if let Err(e) = outcome {
                        failures.lock().unwrap().push(format!(
                            "{:?} {:?}->{:?}: {e}",
                            g.edges().collect::<Vec<_>>(),
                            s,
                            t
                        ));
                    }
                }
            }
        }
    });
    let failures = failures.into_inner().unwrap();
    let pairs = pairs.into_inner();
    if failures.is_empty() {
        Ok(format!("{pairs} ordered support pairs on {} graphs", graphs.len()))
    } else {
        Err(format!("{}/{pairs} failed, e.g. {:?}", failures.len(), &failures[..failures.len().min(3)]))
    }
}

/// A random instance for the property suites.
fn random_instance(rng: &mut ChaCha8Rng) -> Configuration {
    let n = rng.gen_range(3..=7);
    let g = Arc::new(random_connected_graph(rng, n, 0.25));
    let k = rng.gen_range(1..=n);
    random_configuration(rng, &g, k)
}

fn random_walk(rng: &mut ChaCha8Rng, c: &Configuration, steps: usize) -> MoveSequence {
    let mut cur = c.clone();
    let mut moves = Vec::new();
    for _ in 0..steps {
        let options = enumerate_moves(&cur);
        if options.is_empty() {
            break;
        }
        let m = options[rng.gen_range(0..options.len())].clone();
        cur = apply_move(&cur, &m).unwrap();
        moves.push(m);
    }
    MoveSequence::new(c.clone(), moves)
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut summary = Vec::new();

    // a move followed by its reverse is the identity
    for i in 0..PROPERTY_CASES {
        let c = random_instance(&mut rng);
        let options = enumerate_moves(&c);
        let Some(m) = options.get(rng.gen_range(0..options.len().max(1))) else { continue };
        let there = apply_move(&c, m).map_err(|e| format!("round-trip #{i}: {e}"))?;
        let back = apply_move(&there, &m.reversed()).map_err(|e| format!("round-trip #{i}: reverse {e}"))?;
        ensure(back == c, || format!("round-trip #{i}: {m} on {c}"))?;
    }
    summary.push("round-trip");

    // similar configurations admit the same moves
    for i in 0..PROPERTY_CASES {
        let c = random_instance(&mut rng);
        let support: Vec<Vertex> = c.occupied().into_iter().collect();
        let mut labels: Vec<usize> = (1..=c.k()).collect();
        use rand::seq::SliceRandom;
        labels.shuffle(&mut rng);
        let other = make_config(c.graph_arc(), support.into_iter().zip(labels)).unwrap();
        ensure(c.is_similar(&other) == Ok(true), || format!("similarity #{i}"))?;
        ensure(enumerate_moves(&c) == enumerate_moves(&other), || format!("similarity #{i}: {c} vs {other}"))?;
        let walk = random_walk(&mut rng, &c, 6);
        let moved = MoveSequence::new(other.clone(), walk.moves.clone());
        let (a, sa) = walk.apply().map_err(|e| format!("similarity #{i}: {e}"))?;
        let (b, sb) = moved.apply().map_err(|e| format!("similarity #{i}: transported {e}"))?;
        ensure(sa == sb && a.is_similar(&b) == Ok(true), || format!("similarity #{i}: endpoints differ"))?;
    }
    summary.push("similarity");

    // reversing a sequence returns to its source
    for i in 0..PROPERTY_CASES {
        let c = random_instance(&mut rng);
        let steps = rng.gen_range(0..10);
        let walk = random_walk(&mut rng, &c, steps);
        let back = walk.reversed().map_err(|e| format!("reversal #{i}: {e}"))?;
        let (end, sigma) = back.apply().map_err(|e| format!("reversal #{i}: {e}"))?;
        let (_, forward) = walk.apply().unwrap();
        ensure(end == c && sigma == forward.inverse(), || format!("reversal #{i}: {c}"))?;
    }
    summary.push("reversal");

    // relocating and conjugating carries the target group into the source group
    let mut conj_failures = Vec::new();
    for i in 0..PROPERTY_CASES {
        let f0 = random_instance(&mut rng);
        let g = f0.graph_arc().clone();
        let target = swarm_wilson::verify::random_support(&mut rng, &g, f0.k());
        let plan = relocate(&f0, &target).map_err(|e| format!("conjugation #{i}: {e}"))?;
        let (f1, sigma) = plan.apply().map_err(|e| format!("conjugation #{i}: {e}"))?;
        let at_target = wilson_group(&f1);
        let at_source = wilson_group(&f0);
        let phi = random_element(&mut rng, &at_target);
        let image = sigma.compose(&phi).compose(&sigma.inverse());
        if !at_source.contains(&image) {
            conj_failures.push(format!(
                "#{i} {:?} {} -> {:?}: {phi} in {at_target}, {image} not in {at_source}",
                g.edges().collect::<Vec<_>>(),
                f0,
                target
            ));
        }
    }
    ensure(conj_failures.is_empty(), || {
        format!(
            "conjugation: {}/{PROPERTY_CASES} failed, e.g. {:?}",
            conj_failures.len(),
            &conj_failures[..conj_failures.len().min(3)]
        )
    })?;
    summary.push("conjugation");

    // the oracle's label group is a group whose order divides k!
    for i in 0..PROPERTY_CASES {
        let c = random_instance(&mut rng);
        let group = oracle_label_group(&c, BUDGET).map_err(|e| format!("closure #{i}: {e}"))?;
        ensure(group.contains(&VertexPermutation::identity()), || format!("closure #{i}: no identity"))?;
        let elems: Vec<&VertexPermutation> = group.iter().collect();
        for a in &elems {
            ensure(group.contains(&a.inverse()), || format!("closure #{i}: inverse of {a}"))?;
        }
        // generated by a few random elements: closure under products of pairs
        for _ in 0..20 {
            let a = elems[rng.gen_range(0..elems.len())];
            let b = elems[rng.gen_range(0..elems.len())];
            ensure(group.contains(&a.compose(b)), || format!("closure #{i}: {a} * {b}"))?;
        }
        let order = BigUint::from(group.len());
        ensure(factorial(c.k()) % &order == BigUint::from(0u32), || format!("closure #{i}: order {order}"))?;
        // every vertex of a move stays inside the graph
        for m in enumerate_moves(&c) {
            ensure(is_valid(&c, &m) == Ok(true), || format!("closure #{i}: enumerated {m} invalid"))?;
        }
    }
    summary.push("closure");
    Ok(format!("{} x {PROPERTY_CASES} instances", summary.join(", ")))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "cycle saturated rotates", limit: Duration::from_secs(1), run: cycle_criterion },
        Criterion { id: 2, name: "tree saturated frozen", limit: Duration::from_secs(10), run: tree_criterion },
        Criterion {
            id: 3,
            name: "cycle/path non-saturated labels fixed",
            limit: Duration::from_secs(30),
            run: cycle_path_label_criterion,
        },
        Criterion { id: 4, name: "theta graph symmetric", limit: Duration::from_secs(5), run: theta_criterion },
        Criterion { id: 5, name: "weak blocks alt/sym", limit: Duration::from_secs(30), run: weak_block_criterion },
        Criterion { id: 6, name: "pendant triangle cyclic", limit: Duration::from_secs(1), run: pendant_criterion },
        Criterion {
            id: 7,
            name: "saturated agreement n<=6",
            limit: Duration::from_secs(600),
            run: exhaustive_saturated_criterion,
        },
        Criterion { id: 8, name: "star transposition", limit: Duration::from_secs(1), run: star_criterion },
        Criterion { id: 9, name: "curated non-saturated", limit: Duration::from_secs(120), run: curated_criterion },
        Criterion {
            id: 10,
            name: "relocation totality n<=7",
            limit: Duration::from_secs(600),
            run: relocation_criterion,
        },
        Criterion { id: 11, name: "property suites", limit: Duration::from_secs(300), run: property_suites },
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_none_or(|id| id == c.id)) {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({detail}; {elapsed:.2?})", c.id, c.name)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
