//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use boolfn_core::algebra::{degree, fourier_transform, Modulus};
use boolfn_core::chains::{
    alternation_along, decrease_along, gap_family_chain, glued_composition_chain,
    monotone_decomposition, Chain,
};
use boolfn_core::families::{address, gap_family, parity};
use boolfn_core::measures::{
    alternation_decrease, circuit_negations, decision_tree_depth, sensitivity,
};
use boolfn_core::verify::{
    enumerate_functions, run_check_suite, sample_functions, CheckConfig, Population, SweepReport,
};
use boolfn_core::{compose, Counted, LazyFunction, TruthTable};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed > limit {
        Err(format!("{label} took {elapsed:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

/// All `n!` chains, by plain recursive enumeration.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

/// Values of `f` along the chain given by `order`, read straight off the table.
fn chain_values(f: &TruthTable, order: &[usize]) -> Vec<bool> {
    let n = f.arity();
    let mut x = 0u64;
    let mut out = vec![f.get(0)];
    for &v in order {
        x |= 1 << (n - v);
        out.push(f.get(x));
    }
    out
}

fn sweep_clean(report: &SweepReport, names: &[&str]) -> Result<u64, String> {
    let mut evaluated = 0;
    for name in names {
        let agg = report
            .check(name)
            .ok_or_else(|| format!("check {name} missing from report"))?;
        ensure!(
            agg.fail == 0,
            "{name}: {} violations, first {:?}",
            agg.fail,
            agg.counterexamples.first()
        );
        evaluated += agg.pass;
    }
    Ok(evaluated)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for k in 1..=4 {
        let g = gap_family(k).map_err(|e| e.to_string())?;
        let table = g.function.as_table().expect("dense for k <= 4");
        let dp = alternation_decrease(table).unwrap();
        let chain = gap_family_chain(&g.tree).unwrap();
        let along = alternation_along(table, &chain).unwrap();
        ensure!(dp.alt == (1 << k) - 1, "k={k}: DP alt {}", dp.alt);
        ensure!(along == dp.alt, "k={k}: chain gives {along}");
    }
    within("k <= 4", start.elapsed(), Duration::from_secs(10))?;
    let mut lazy_times = Vec::new();
    for k in 5..=6 {
        let start = Instant::now();
        let g = gap_family(k).unwrap();
        ensure!(g.function.as_table().is_none(), "k={k} should stay lazy");
        let lazy = LazyFunction::from(g.tree.clone());
        let chain = gap_family_chain(&g.tree).unwrap();
        let along = alternation_along(&lazy, &chain).unwrap();
        ensure!(along == (1 << k) - 1, "k={k}: chain gives {along}");
        let elapsed = start.elapsed();
        if k == 6 {
            within("k = 6 chain", elapsed, Duration::from_secs(1))?;
        }
        lazy_times.push(elapsed);
    }
    Ok(format!(
        "alt(f_k) = 2^k - 1 for k = 1..6; k<=4 in {:.2?}, k=6 chain in {:.2?}",
        start.elapsed(),
        lazy_times[1]
    ))
}

fn criterion_2() -> Outcome {
    for k in 1..=3 {
        let g = gap_family(k).unwrap();
        let dt = decision_tree_depth(g.function.as_table().unwrap()).unwrap();
        ensure!(dt == k, "DT(f_{k}) = {dt}");
    }
    for k in 1..=4 {
        let g = gap_family(k).unwrap();
        let deg = degree(g.function.as_table().unwrap(), Modulus::Integers).unwrap();
        ensure!(deg == k, "deg(f_{k}) = {deg}");
    }
    let start = Instant::now();
    let f4 = gap_family(4).unwrap();
    let sparsity = fourier_transform(f4.function.as_table().unwrap())
        .unwrap()
        .sparsity();
    let elapsed = start.elapsed();
    within("sparsity(f_4)", elapsed, Duration::from_secs(5))?;
    ensure!(sparsity >= 16, "sparsity(f_4) = {sparsity}");
    Ok(format!(
        "DT(f_k) = k (k<=3), deg(f_k) = k (k<=4), sparsity(f_4) = {sparsity} in {elapsed:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let report = run_check_suite(
        &Population::Exhaustive { n: 4 },
        &["all"],
        &CheckConfig::default(),
        0,
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within("n = 4 sweep", elapsed, Duration::from_secs(300))?;
    ensure!(
        report.members == 65536,
        "swept {} functions",
        report.members
    );
    for name in ["alt-le-exp-dt", "dc-le-exp-dt"] {
        let agg = report.check(name).unwrap();
        ensure!(
            agg.pass == 65536 && agg.fail == 0,
            "{name}: pass {} fail {} skipped {}",
            agg.pass,
            agg.fail,
            agg.skipped
        );
    }
    ensure!(
        report.is_clean(),
        "{} assertion failures elsewhere in the sweep",
        report.assertion_failures
    );
    Ok(format!(
        "65536 functions, {} checks, zero violations, {elapsed:.2?}",
        report.checks.len()
    ))
}

fn criterion_4() -> Outcome {
    let addr = address(2).unwrap();
    let s = sensitivity(&addr);
    ensure!(s == 3, "s(ADDR_2) = {s}");
    let explicit = Chain::new(vec![3, 1, 5, 2, 6, 4]).unwrap();
    let points: Vec<u64> = explicit.point_indices();
    let expected = [
        0b000000, 0b001000, 0b101000, 0b101010, 0b111010, 0b111011, 0b111111,
    ];
    ensure!(points == expected, "explicit chain points {points:?}");
    let along = alternation_along(&addr, &explicit).unwrap();
    ensure!(along == 5, "explicit chain gives {along}");
    let dp = alternation_decrease(&addr).unwrap().alt;
    ensure!(dp == 5, "DP alt(ADDR_2) = {dp}");
    let oracle = permutations(6)
        .iter()
        .map(|p| {
            chain_values(&addr, p)
                .windows(2)
                .filter(|w| w[0] != w[1])
                .count()
        })
        .max()
        .unwrap();
    ensure!(oracle == 5, "720-chain maximum {oracle}");
    Ok("s = 3, explicit chain 5, DP 5, all 720 chains max 5".into())
}

fn criterion_5() -> Outcome {
    let addr = address(2).unwrap();
    let witness = alternation_decrease(&addr).unwrap().witness;
    let start = Instant::now();
    let g2 = compose(addr.clone(), addr.clone()).unwrap();
    let chain = glued_composition_chain(&witness, &witness, &addr).unwrap();
    let counted = Counted::new(g2);
    let along = alternation_along(&counted, &chain).unwrap();
    let elapsed = start.elapsed();
    within("ADDR_2 glued chain", elapsed, Duration::from_secs(1))?;
    ensure!(along >= 25, "glued chain gives {along}");
    ensure!(
        counted.calls() <= 37,
        "{} lazy evaluations",
        counted.calls()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let pairs = 1500;
    let mut checked = 0;
    let mut equal = 0;
    while checked < pairs {
        let m = 1 + (rng.next_u32() % 12) as usize;
        let n = 1 + (rng.next_u32() as usize % (12 / m));
        let seed = rng.next_u64();
        let f = sample_functions(m, 1, seed).unwrap().next().unwrap();
        let Some(g) = sample_functions(n, 64, seed ^ 1)
            .unwrap()
            .find(|g| g.get(0) != g.get(g.len() as u64 - 1))
        else {
            continue;
        };
        let (af, ag) = (
            alternation_decrease(&f).unwrap(),
            alternation_decrease(&g).unwrap(),
        );
        let chain = glued_composition_chain(&af.witness, &ag.witness, &g).unwrap();
        let composed = compose(f.clone(), g.clone()).unwrap();
        let along = alternation_along(&composed, &chain).unwrap();
        ensure!(
            along >= af.alt * ag.alt,
            "f = {f}, g = {g}: glued {along} < {} * {}",
            af.alt,
            ag.alt
        );
        if along == af.alt * ag.alt {
            equal += 1;
        }
        checked += 1;
    }
    Ok(format!(
        "ADDR_2 o ADDR_2: {along} alternations, {} evaluations, {elapsed:.2?}; {checked} seeded pairs, zero violations ({equal} exactly tight)",
        counted.calls()
    ))
}

fn modular_names() -> [&'static str; 5] {
    [
        "deg-alt-modular-m2",
        "deg-alt-modular-m3",
        "deg-alt-modular-m4",
        "deg-alt-modular-m5",
        "deg-alt-modular-m6",
    ]
}

fn criterion_6() -> Outcome {
    let cfg = CheckConfig::default();
    let exhaustive =
        run_check_suite(&Population::exhaustive_up_to(4), &modular_names(), &cfg, 0).unwrap();
    let mut total = sweep_clean(&exhaustive, &modular_names())?;
    for n in 5..=8 {
        let pop = Population::Sampled {
            n,
            count: 10_000,
            seed: 600 + n as u64,
        };
        let report = run_check_suite(&pop, &modular_names(), &cfg, 0).unwrap();
        ensure!(
            report.members == 10_000,
            "n={n}: {} samples",
            report.members
        );
        total += sweep_clean(&report, &modular_names())?;
    }
    Ok(format!(
        "{total} (function, m) evaluations, zero violations"
    ))
}

fn spectral_population() -> Vec<Population> {
    let mut pops = vec![Population::exhaustive_up_to(4)];
    for n in 5..=10 {
        pops.push(Population::Sampled {
            n,
            count: 10_000,
            seed: 700 + n as u64,
        });
    }
    pops
}

fn criterion_7() -> Outcome {
    let names = ["weighted-l1-ge-n", "s-sqrt-sparsity-ge-n"];
    let mut total = 0;
    for pop in spectral_population() {
        let report = run_check_suite(&pop, &names, &CheckConfig::default(), 0).unwrap();
        total += sweep_clean(&report, &names)?;
    }
    for n in 1..=10 {
        let spectrum = fourier_transform(&parity(n).unwrap()).unwrap();
        let weighted = spectrum.scaled_weighted_l1();
        ensure!(
            weighted == (n as i128) << n,
            "parity_{n}: weighted L1 {weighted} / 2^{n}"
        );
    }
    Ok(format!(
        "{total} depends-on-all evaluations, zero violations; parity_n tight for n = 1..10"
    ))
}

fn criterion_8() -> Outcome {
    let names = [
        "inf-le-alt-deg2-sq",
        "inf-le-alt-sqrt-n",
        "fourier-influence",
    ];
    let mut total = 0;
    for pop in spectral_population() {
        let report = run_check_suite(&pop, &names, &CheckConfig::default(), 0).unwrap();
        total += sweep_clean(&report, &names)?;
    }
    Ok(format!("{total} evaluations, zero violations"))
}

fn criterion_9() -> Outcome {
    let chains = permutations(4);
    ensure!(chains.len() == 24, "{} chains", chains.len());
    let mut mismatches = 0;
    let mut first = None;
    for f in enumerate_functions(4).unwrap() {
        let dp = alternation_decrease(&f).unwrap();
        let (mut alt, mut dc) = (0, 0);
        for order in &chains {
            let v = chain_values(&f, order);
            alt = alt.max(v.windows(2).filter(|w| w[0] != w[1]).count());
            dc = dc.max(v.windows(2).filter(|w| w[0] && !w[1]).count());
        }
        let negs = circuit_negations(dp.dc);
        let by_log = ((1 + dp.dc) as f64).log2().ceil() as usize;
        if dp.dc != dc || dp.alt != alt || negs != by_log {
            mismatches += 1;
            first.get_or_insert_with(|| f.to_text());
        }
    }
    ensure!(mismatches == 0, "{mismatches} mismatches, first {first:?}");
    for n in 1..=3 {
        for f in enumerate_functions(n).unwrap() {
            let dp = alternation_decrease(&f).unwrap();
            let oracle = permutations(n)
                .iter()
                .map(|p| decrease_along(&f, &Chain::new(p.clone()).unwrap()).unwrap())
                .max()
                .unwrap();
            ensure!(dp.dc == oracle, "{f}: dc {} vs {oracle}", dp.dc);
        }
    }
    Ok("65536 functions at n = 4 against 24 chains (and all n <= 3), zero mismatches".into())
}

fn monotone_by_pairs(f: &TruthTable) -> bool {
    let len = f.len() as u64;
    (0..len).all(|x| (0..len).all(|y| x & !y != 0 || f.get(x) <= f.get(y)))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for f in enumerate_functions(n).unwrap() {
            let alt = alternation_decrease(&f).unwrap().alt;
            let d = monotone_decomposition(&f).unwrap();
            ensure!(
                d.parts.len() == alt,
                "{f}: {} parts, alt {alt}",
                d.parts.len()
            );
            ensure!(d.negated == f.get(0), "{f}: negation flag");
            for part in &d.parts {
                ensure!(monotone_by_pairs(part), "{f}: part {part} not monotone");
            }
            let mut acc = TruthTable::constant(n, d.negated).unwrap();
            for part in &d.parts {
                acc = acc.xor(part).unwrap();
            }
            ensure!(acc == f, "{f}: XOR gives {acc}");
            count += 1;
        }
    }
    Ok(format!("{count} functions, exact reconstruction"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("gap family alternation", criterion_1),
        ("gap family measures", criterion_2),
        ("decision-tree bounds on all n=4 functions", criterion_3),
        ("address function separation", criterion_4),
        ("glued composition chains", criterion_5),
        ("degree vs alternation and modular degrees", criterion_6),
        ("spectral lower bounds", criterion_7),
        ("influence bounds", criterion_8),
        ("decrease and negation oracle", criterion_9),
        ("monotone decomposition", criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| *f == id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
