//! Sweeps of the check registry over function populations.

pub mod checks;
pub mod population;
pub mod report;

use std::fmt::Write as _;

use rayon::prelude::*;

pub use checks::{
    find_check, registry, select_checks, Check, CheckConfig, CheckKind, Outcome, Profile,
    REGISTRY_VERSION,
};
pub use population::{
    enumerate_functions, sample_functions, sampled, Population, MAX_EXHAUSTIVE_ARITY,
};
pub use report::{CheckAggregate, CheckResult, RatioWitness, Status, SweepReport, Witness};

use crate::algebra::{degree_f2, fourier_transform, multilinear_coefficients, Modulus};
use crate::error::{Error, Result};
use crate::measures::{
    alternation_decrease, block_sensitivity, certificate_complexity, decision_tree_depth,
    influence, sensitivity, BS_CAP, C_CAP, DT_CAP,
};
use crate::rational;
use crate::table::TruthTable;

/// Runs the selected checks on one function.
pub fn check_function(
    table: &TruthTable,
    checks: &[&Check],
    config: &CheckConfig,
) -> Vec<CheckResult> {
    let profile = Profile::new(table);
    let text = table.to_text();
    checks
        .iter()
        .map(|c| CheckResult::from_outcome(c, text.clone(), c.run(&profile, config)))
        .collect()
}

/// Evaluates the selected checks on every member of `population` using
/// `jobs` worker threads (0 picks the default). The report is identical for
/// any thread count.
pub fn run_check_suite<S: AsRef<str>>(
    population: &Population,
    selection: &[S],
    config: &CheckConfig,
    jobs: usize,
) -> Result<SweepReport> {
    let checks = select_checks(selection)?;
    let members = population.members()?;
    let empty =
        || -> Vec<CheckAggregate> { checks.iter().map(|c| CheckAggregate::empty(c)).collect() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
    let aggregates = pool.install(|| {
        members
            .par_iter()
            .enumerate()
            .fold(empty, |mut acc, (i, table)| {
                for (agg, result) in acc.iter_mut().zip(check_function(table, &checks, config)) {
                    agg.record(i as u64, result);
                }
                acc
            })
            .reduce(empty, |a, b| {
                a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()
            })
    });
    Ok(SweepReport::new(
        population.clone(),
        members.len() as u64,
        aggregates,
    ))
}

/// Re-runs one check on one function given in text form, e.g. to reproduce a
/// counterexample from a report.
pub fn rerun(check: &str, function: &str, config: &CheckConfig) -> Result<CheckResult> {
    let check = find_check(check)?;
    let table = TruthTable::parse(function)?;
    Ok(check_function(&table, &[check], config).remove(0))
}

/// Header of [`measure_matrix_csv`].
pub const MEASURE_COLUMNS: &str =
    "function,n,s,bs,C,I,alt,dc,DT,deg,deg_2,deg_3,deg_4,deg_5,deg_6,sparsity";

/// One row per function; measures above their solver cap are left empty.
pub fn measure_matrix_csv(tables: &[TruthTable]) -> Result<String> {
    let rows = tables
        .par_iter()
        .map(measure_row)
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::from(MEASURE_COLUMNS);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

fn measure_row(f: &TruthTable) -> Result<String> {
    let n = f.arity();
    let capped = |cap: usize, v: &dyn Fn() -> Result<usize>| -> Result<String> {
        Ok(if n <= cap {
            v()?.to_string()
        } else {
            String::new()
        })
    };
    let alt = alternation_decrease(f)?;
    let poly = multilinear_coefficients(f, Modulus::Integers)?;
    let mut row = String::new();
    let _ = write!(
        row,
        "{},{},{},{},{},{},{},{},{},{},{}",
        f.to_text(),
        n,
        sensitivity(f),
        capped(BS_CAP, &|| block_sensitivity(f))?,
        capped(C_CAP, &|| certificate_complexity(f))?,
        rational::to_text(&influence(f)),
        alt.alt,
        alt.dc,
        capped(DT_CAP, &|| decision_tree_depth(f))?,
        poly.degree(),
        degree_f2(f),
    );
    for m in 3..=6i64 {
        let d = poly
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c.rem_euclid(m) != 0)
            .map(|(s, _)| s.count_ones())
            .max()
            .unwrap_or(0);
        let _ = write!(row, ",{d}");
    }
    let _ = write!(row, ",{}", fourier_transform(f)?.sparsity());
    Ok(row)
}
