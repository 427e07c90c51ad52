//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dense, maximum_cliques};
use semiclique::harness::{instance_seed, k_sqrt_nlogn, solver_seed, Cell};
use semiclique::linear::aggregate;
use semiclique::solvers::{
    candidate_triple, post_process, solve_degree, solve_semirandom, solve_single_full, SolverConfig, SolverKind,
};
use semiclique::verifier::{
    bad_pairs, bad_triples_estimate, diamond_to_success, gaussian_max_stat, holder_equality_check,
    l1_aggregate_stats, sample_outside, sym_deviation_estimate,
};
use semiclique::{generate, AdversaryStrategy, Instance, InstanceParams, Triple};

const N: usize = 4096;
const MASTER: u64 = 20_240_601;
const TRIALS: usize = 20;

const C1_MIN_SUCCESS: usize = 18;
const C1_MAX_MINUTES: u64 = 15;
const C2_RANDOM_MIN: usize = 18;
const C2_BOOST_MAX: usize = 2;
const C3_MIN_SUCCESS: usize = 18;
const C4_VERTICES: usize = 32;
const C4_TRIPLE_SAMPLES: usize = 100_000;
const C5_SIZES: [usize; 4] = [1, 4, 16, 64];
const C5_REPORTS: usize = 100;
const C5_MIN_PASS: usize = 95;
const C6_MIN_PASS: usize = 99;
const C7_FUZZ: usize = 10_000;
const C8_INSTANCES: u64 = 20;
const C9_SLACK: f64 = 3.0;
const C10_TREND_SLACK: f64 = 0.15;
const C11_SEEDS: u64 = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: &str, o: &Outcome, failures: &mut Vec<String>) {
    println!("[criterion {id}] {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    if !o.pass {
        failures.push(id.to_string());
    }
}

fn adversaries(k: usize) -> Vec<AdversaryStrategy> {
    [
        "random".to_string(),
        "fake_cliques:count=6".to_string(),
        format!("degree_boost:target_count=1,boost={k}"),
        "sign_match:victims=4,pool=1024".to_string(),
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn cell(n: usize, k: usize, adversary: &AdversaryStrategy, solver: SolverKind) -> Cell {
    Cell { n, k, adversary: adversary.clone(), solver }
}

fn instance_for(c: &Cell, trial: usize) -> Instance {
    generate(&InstanceParams::new(c.n, c.k, instance_seed(MASTER, c, trial), c.adversary.clone())).unwrap()
}

/// Criterion-1 instances, grouped by adversary.
struct Suite {
    k: usize,
    groups: Vec<(Cell, Vec<Instance>)>,
}

fn criterion_1(suite: &Suite, build_time: Duration) -> Outcome {
    let started = Instant::now();
    let cfg = SolverConfig::default();
    let cap = 2 * N / suite.k;
    let mut pass = true;
    let mut parts = Vec::new();
    for (c, instances) in &suite.groups {
        let mut hits = 0;
        let mut longest = 0;
        for (t, i) in instances.iter().enumerate() {
            let list = solve_semirandom(i.graph(), c.k, &cfg, solver_seed(MASTER, c, t)).unwrap();
            if list.contains(i.planted()) {
                hits += 1;
                longest = longest.max(list.len());
            }
        }
        pass &= hits >= C1_MIN_SUCCESS && longest <= cap;
        parts.push(format!("{}: {hits}/{TRIALS} (max len {longest})", c.adversary));
    }
    let total = build_time + started.elapsed();
    pass &= total <= Duration::from_secs(60 * C1_MAX_MINUTES);
    Outcome {
        pass,
        detail: format!(
            "n={N} k={} need >= {C1_MIN_SUCCESS}/{TRIALS}, len <= {cap}, <= {C1_MAX_MINUTES} min; {}; wall {:.1} s",
            suite.k,
            parts.join(", "),
            total.as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let k = k_sqrt_nlogn(6.0, N);
    let boost: AdversaryStrategy = format!("degree_boost:target_count=1,boost={k}").parse().unwrap();
    let exact = |adv: &AdversaryStrategy| {
        let c = cell(N, k, adv, SolverKind::Degree);
        (0..TRIALS)
            .filter(|&t| {
                let i = instance_for(&c, t);
                &solve_degree(i.graph(), k).unwrap() == i.planted()
            })
            .count()
    };
    let random = exact(&AdversaryStrategy::Random);
    let boosted = exact(&boost);
    Outcome {
        pass: random >= C2_RANDOM_MIN && boosted <= C2_BOOST_MAX,
        detail: format!(
            "n={N} k={k}: random {random}/{TRIALS} (need >= {C2_RANDOM_MIN}), degree_boost {boosted}/{TRIALS} (need <= {C2_BOOST_MAX})"
        ),
    }
}

fn criterion_3() -> Outcome {
    let k = ((3.0 * (N as f64).powf(0.75)).ceil() as usize).min(N / 2);
    let c = cell(N, k, &AdversaryStrategy::Random, SolverKind::Single);
    let cfg = SolverConfig::default();
    let hits = (0..TRIALS)
        .filter(|&t| {
            let i = instance_for(&c, t);
            solve_single_full(i.graph(), k, &cfg, solver_seed(MASTER, &c, t)).unwrap().contains(i.planted())
        })
        .count();
    Outcome {
        pass: hits >= C3_MIN_SUCCESS,
        detail: format!("n={N} k={k}: {hits}/{TRIALS} (need >= {C3_MIN_SUCCESS})"),
    }
}

fn criterion_4(suite: &Suite) -> Outcome {
    let k = suite.k;
    let bound = (N as f64 / k as f64).powi(2);
    let (mut checked, mut pair_bad, mut triple_bad) = (0, 0, 0);
    let (mut worst_pairs, mut worst_triples) = (0usize, 0f64);
    for (c, instances) in &suite.groups {
        for (t, i) in instances.iter().enumerate() {
            let seed = instance_seed(MASTER, c, t);
            for v in sample_outside(i, C4_VERTICES, seed) {
                let pairs = bad_pairs(i, v).unwrap();
                let est = bad_triples_estimate(i, v, C4_TRIPLE_SAMPLES, seed).unwrap();
                checked += 1;
                pair_bad += usize::from(pairs as f64 > bound);
                triple_bad += usize::from(est.estimate > bound);
                worst_pairs = worst_pairs.max(pairs);
                worst_triples = worst_triples.max(est.estimate);
            }
        }
    }
    Outcome {
        pass: pair_bad == 0 && triple_bad == 0,
        detail: format!(
            "bound n^2/k^2 = {bound:.1}; {checked} vertices; pair violations {pair_bad} (max {worst_pairs}), \
             triple violations {triple_bad} (max estimate {worst_triples:.0})"
        ),
    }
}

/// Criteria 5 and 6 share draws: per size, 100 single-draw reports
/// rotating over the criterion-1 instances.
fn criteria_5_and_6(suite: &Suite) -> (Outcome, Outcome) {
    let instances: Vec<&Instance> = suite.groups.iter().flat_map(|(_, v)| v.iter()).collect();
    let (mut pass5, mut pass6) = (true, true);
    let (mut parts5, mut parts6) = (Vec::new(), Vec::new());
    for b in C5_SIZES {
        let (mut mean_ok, mut max_ok, mut exact) = (0, 0, true);
        for r in 0..C5_REPORTS {
            let i = instances[r % instances.len()];
            let stats = l1_aggregate_stats(i, b, 1, MASTER ^ ((b * 1000 + r) as u64)).unwrap();
            mean_ok += usize::from(stats.mean_report.pass);
            max_ok += usize::from(stats.max_report.pass);
            if b == 1 {
                exact &= stats.draws.iter().all(|&d| d == (i.n() - i.k()) as u64);
            }
        }
        pass5 &= mean_ok >= C5_MIN_PASS && exact;
        pass6 &= max_ok >= C6_MIN_PASS;
        parts5.push(format!("|B|={b}: {mean_ok}/{C5_REPORTS}{}", if b == 1 && exact { " (exactly n-k)" } else { "" }));
        parts6.push(format!("|B|={b}: {max_ok}/{C5_REPORTS}"));
    }
    (
        Outcome { pass: pass5, detail: format!("mean <= (n-k)sqrt|B| need >= {C5_MIN_PASS}: {}", parts5.join(", ")) },
        Outcome { pass: pass6, detail: format!("max within deviation bound need >= {C6_MIN_PASS}: {}", parts6.join(", ")) },
    )
}

/// Failures of the linearity, split, Hölder and boring-part identities for
/// one `(B, v)`, each side computed on its own.
fn identity_failures(i: &Instance, b: &[Triple], v: usize) -> usize {
    let g = i.graph();
    let s = i.planted();
    let out = i.outside();
    let cv = g.column(v).unwrap();
    let t = aggregate(g, b).unwrap();
    let full = t.dot_signed(&cv).unwrap();
    let by_column: i64 = b.iter().map(|&[x, y, z]| g.triple_column(x, y, z).unwrap().inner(&cv).unwrap()).sum();
    let s_part = t.restrict(s).unwrap().dot_signed(&cv.restrict(s).unwrap()).unwrap();
    let t_out = t.restrict(&out).unwrap();
    let out_part = t_out.dot_signed(&cv.restrict(&out).unwrap()).unwrap();
    let boring = b.len() as i64 * cv.restrict(s).unwrap().sum();
    usize::from(by_column != full)
        + usize::from(s_part + out_part != full)
        + usize::from(out_part > t_out.l1_norm() as i64)
        + usize::from(s_part != boring)
}

fn criterion_7() -> Outcome {
    let tiny = common::tiny8();
    let a = dense(tiny.graph());
    let s: Vec<usize> = tiny.planted().iter().collect();
    let mut triples = Vec::new();
    for &x in &s {
        for &y in &s {
            for &z in &s {
                triples.push([x, y, z]);
            }
        }
    }
    let mut families: Vec<Vec<Triple>> = vec![vec![]];
    for (p, &t) in triples.iter().enumerate() {
        families.push(vec![t]);
        for &u in &triples[p + 1..] {
            families.push(vec![t, u]);
        }
    }
    let mut failures = 0;
    let mut cases = 0;
    for b in &families {
        let oracle_t = common::aggregate(&a, b);
        for v in 0..tiny.n() {
            cases += 1;
            failures += identity_failures(&tiny, b, v);
            let lib = aggregate(tiny.graph(), b).unwrap().dot_signed(&tiny.graph().column(v).unwrap()).unwrap();
            failures += usize::from(lib != common::dot(&oracle_t, &common::col(&a, v)));
        }
    }

    let mut r = ChaCha8Rng::seed_from_u64(MASTER);
    let per_instance = C7_FUZZ / 10;
    for seed in 0..10 {
        let i = common::random(256, 32, MASTER + seed);
        let s = i.planted().as_slice();
        for _ in 0..per_instance {
            let size = r.random_range(1..=8);
            let b: Vec<Triple> = (0..size)
                .map(|_| [s[r.random_range(0..32)], s[r.random_range(0..32)], s[r.random_range(0..32)]])
                .collect();
            failures += identity_failures(&i, &b, r.random_range(0..256));
            cases += 1;
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!(
            "tiny8 exhaustive {} families x 8 vertices plus {C7_FUZZ} fuzzed draws at n=256: {cases} cases, {failures} failures",
            families.len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let adv: AdversaryStrategy = "sign_match:victims=4,pool=1024".parse().unwrap();
    let (mut checked, mut broken) = (0, 0);
    for seed in 0..C8_INSTANCES {
        let i = generate(&InstanceParams::new(1024, 160, MASTER + seed, adv.clone())).unwrap();
        for &v in &i.trace().victims {
            let h = holder_equality_check(&i, v, &i.trace().pool).unwrap();
            checked += 1;
            broken += usize::from(!h.holds || h.lhs != h.rhs as i64 - 2 * h.defect as i64);
        }
    }
    Outcome {
        pass: checked > 0 && broken == 0,
        detail: format!("n=1024 k=160, {C8_INSTANCES} instances: {checked} victims, {broken} broken identities"),
    }
}

fn criterion_9() -> Outcome {
    let i = common::random(64, 16, MASTER);
    let s = i.planted().as_slice();
    let mut r = ChaCha8Rng::seed_from_u64(MASTER ^ 9);
    let mut pool: Vec<Triple> = Vec::new();
    while pool.len() < 16 {
        let t = [s[r.random_range(0..16)], s[r.random_range(0..16)], s[r.random_range(0..16)]];
        if !pool.contains(&t) {
            pool.push(t);
        }
    }
    let family: Vec<Vec<Triple>> = pool.into_iter().map(|t| vec![t]).collect();
    let rep = sym_deviation_estimate(&i, &family, 200, MASTER).unwrap();
    Outcome {
        pass: rep.observed <= C9_SLACK * rep.bound,
        detail: format!(
            "n=64 k=16, 16 singletons, 200 reps: lhs {:.3}, rhs {:.3}, need lhs <= {C9_SLACK} rhs",
            rep.observed, rep.bound
        ),
    }
}

fn criterion_10(suite: &Suite) -> Outcome {
    let i = &suite.groups[0].1[0];
    let small = gaussian_max_stat(i, 100, 50, MASTER).unwrap();
    let large = gaussian_max_stat(i, 1000, 50, MASTER).unwrap();
    let growth = large.observed / small.observed;
    let limit = ((1000f64).ln() / (100f64).ln()).sqrt() + C10_TREND_SLACK;
    Outcome {
        pass: small.pass && large.pass && growth <= limit,
        detail: format!(
            "m=100: {:.1} <= {:.1}? {}; m=1000: {:.1} <= {:.1}? {}; growth {growth:.3} (need <= {limit:.3})",
            small.observed, small.bound, small.pass, large.observed, large.bound, large.pass
        ),
    }
}

fn criterion_11() -> Outcome {
    let cfg = SolverConfig::default();
    let (mut unique, mut recovered, mut mismatches) = (0, 0, 0);
    let mut missed = Vec::new();
    for (n, k) in [(14usize, 5usize), (12, 4)] {
        for seed in 0..C11_SEEDS {
            let i = common::random(n, k, seed);
            let g = i.graph();
            let a = dense(g);
            for u in 0..n {
                for v in 0..n {
                    let inner = g.column(u).unwrap().inner(&g.column(v).unwrap()).unwrap();
                    mismatches += usize::from(inner != common::dot(&common::col(&a, u), &common::col(&a, v)));
                }
                let cand = candidate_triple(g, k, [u, (u + 1) % n, (u + 3) % n], &cfg).unwrap();
                let pp = post_process(g, &cand, k);
                mismatches += usize::from(pp.as_slice() != common::post_process(&a, cand.as_slice(), k).as_slice());
            }
            let pp = post_process(g, i.planted(), k);
            mismatches += usize::from(pp.as_slice() != common::post_process(&a, i.planted().as_slice(), k).as_slice());

            let cliques = maximum_cliques(&a);
            if cliques.len() == 1 && cliques[0].as_slice() == i.planted().as_slice() {
                unique += 1;
                if solve_semirandom(g, k, &cfg, seed).unwrap().contains(i.planted()) {
                    recovered += 1;
                } else {
                    missed.push(format!("(n={n}, seed={seed})"));
                }
            }
        }
    }
    Outcome {
        pass: recovered == unique && mismatches == 0,
        detail: format!(
            "unique planted maximum in {unique} cases, recovered {recovered}{}; oracle mismatches {mismatches}",
            if missed.is_empty() { String::new() } else { format!(", missed {}", missed.join(" ")) }
        ),
    }
}

/// Properties stated on the acceptance instances: post-processing is
/// idempotent and most planted triples misclassify few outsiders.
fn suite_properties(suite: &Suite) -> Outcome {
    let cfg = SolverConfig::default();
    let k = suite.k;
    let (mut not_idempotent, mut over, mut worst) = (0, 0, 0f64);
    for (c, instances) in &suite.groups {
        for (t, i) in instances.iter().enumerate() {
            let g = i.graph();
            let s = i.planted().as_slice();
            let cand = candidate_triple(g, k, [s[0], s[1], s[2]], &cfg).unwrap();
            for start in [i.planted().clone(), cand] {
                let once = post_process(g, &start, k);
                not_idempotent += usize::from(post_process(g, &once, k) != once);
            }
            let d = diamond_to_success(i, 101, usize::MAX, instance_seed(MASTER, c, t)).unwrap();
            over += usize::from(d.median > 0.1 * k as f64);
            worst = worst.max(d.median);
        }
    }
    Outcome {
        pass: not_idempotent == 0 && over == 0,
        detail: format!(
            "post_process idempotence failures {not_idempotent}; median |S_u1u2u3 \\ S| above 0.1k in {over} instances (max {worst:.1})"
        ),
    }
}

fn main() -> ExitCode {
    let mut failures = Vec::new();
    let k = k_sqrt_nlogn(3.0, N);

    let built = Instant::now();
    let groups = adversaries(k)
        .into_iter()
        .map(|adv| {
            let c = cell(N, k, &adv, SolverKind::Triple);
            let instances = (0..TRIALS).map(|t| instance_for(&c, t)).collect();
            (c, instances)
        })
        .collect();
    let suite = Suite { k, groups };
    let build_time = built.elapsed();

    report("1", &criterion_1(&suite, build_time), &mut failures);
    report("2", &criterion_2(), &mut failures);
    report("3", &criterion_3(), &mut failures);
    report("4", &criterion_4(&suite), &mut failures);
    let (five, six) = criteria_5_and_6(&suite);
    report("5", &five, &mut failures);
    report("6", &six, &mut failures);
    report("7", &criterion_7(), &mut failures);
    report("8", &criterion_8(), &mut failures);
    report("9", &criterion_9(), &mut failures);
    report("10", &criterion_10(&suite), &mut failures);
    report("11", &criterion_11(), &mut failures);
    report("suite properties", &suite_properties(&suite), &mut failures);

    if failures.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {}", failures.join(", "));
        ExitCode::FAILURE
    }
}
