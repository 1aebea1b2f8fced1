//! The check registry. Each check is a named predicate over the measures of
//! one function; the CLI and the test-suite share this table.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    degree_f2, fourier_transform, multilinear_coefficients, FourierSpectrum, Modulus,
    MultilinearPoly,
};
use crate::chains::{
    alternation_along, decrease_along, is_monotone, monotone_decomposition, Chain,
};
use crate::error::{Error, Result};
use crate::measures::sensitivity::sensitivity_profile;
use crate::measures::{
    alternation_decrease, block_sensitivity, certificate_complexity, circuit_negations,
    decision_tree_depth, AlternationReport, BS_CAP, C_CAP, DT_CAP,
};
use crate::table::TruthTable;

/// Bumped whenever a check is added, removed or changes meaning.
pub const REGISTRY_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A proven inequality or identity; any failure is a bug.
    Assert,
    /// An asymptotic statement; only the observed constant is reported.
    Ratio,
    /// A conditional statement evaluated at finite size; flags are recorded.
    Report,
}

/// Tunables shared by all checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Exponent `c` of the polylog conditions.
    pub polylog_exponent: f64,
    /// Largest arity for which all `n!` chains are enumerated.
    pub chain_oracle_max_arity: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            polylog_exponent: 2.0,
            chain_oracle_max_arity: 5,
        }
    }
}

/// Result of one check on one function.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass(Value),
    Fail(Value),
    Skip(String),
    Ratio(f64, Value),
    /// `true` when the finite-size implication did not hold.
    Flag(bool, Value),
}

/// Lazily computed measures of one function, shared across checks.
pub struct Profile<'a> {
    pub table: &'a TruthTable,
    s_profile: OnceCell<Vec<u8>>,
    bs: OnceCell<Option<usize>>,
    c: OnceCell<Option<usize>>,
    dt: OnceCell<Option<usize>>,
    alt: OnceCell<AlternationReport>,
    poly: OnceCell<MultilinearPoly>,
    deg2: OnceCell<usize>,
    spectrum: OnceCell<FourierSpectrum>,
    depends_on_all: OnceCell<bool>,
}

impl<'a> Profile<'a> {
    pub fn new(table: &'a TruthTable) -> Self {
        Self {
            table,
            s_profile: OnceCell::new(),
            bs: OnceCell::new(),
            c: OnceCell::new(),
            dt: OnceCell::new(),
            alt: OnceCell::new(),
            poly: OnceCell::new(),
            deg2: OnceCell::new(),
            spectrum: OnceCell::new(),
            depends_on_all: OnceCell::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.table.arity()
    }

    fn s_profile(&self) -> &[u8] {
        self.s_profile
            .get_or_init(|| sensitivity_profile(self.table))
    }

    pub fn s(&self) -> usize {
        self.s_profile().iter().copied().max().unwrap_or(0) as usize
    }

    /// `Σ_x s(f, x)`, i.e. `2^n · I[f]`.
    pub fn total_sensitivity(&self) -> i128 {
        self.s_profile().iter().map(|&s| s as i128).sum()
    }

    pub fn bs(&self) -> Option<usize> {
        *self
            .bs
            .get_or_init(|| (self.n() <= BS_CAP).then(|| block_sensitivity(self.table).unwrap()))
    }

    pub fn c(&self) -> Option<usize> {
        *self.c.get_or_init(|| {
            (self.n() <= C_CAP).then(|| certificate_complexity(self.table).unwrap())
        })
    }

    pub fn dt(&self) -> Option<usize> {
        *self
            .dt
            .get_or_init(|| (self.n() <= DT_CAP).then(|| decision_tree_depth(self.table).unwrap()))
    }

    pub fn alternation(&self) -> &AlternationReport {
        self.alt
            .get_or_init(|| alternation_decrease(self.table).expect("table within dense cap"))
    }

    pub fn alt(&self) -> usize {
        self.alternation().alt
    }

    pub fn dc(&self) -> usize {
        self.alternation().dc
    }

    fn poly(&self) -> &MultilinearPoly {
        self.poly.get_or_init(|| {
            multilinear_coefficients(self.table, Modulus::Integers).expect("within cap")
        })
    }

    pub fn deg(&self) -> usize {
        self.poly().degree()
    }

    pub fn deg_m(&self, m: u64) -> usize {
        self.poly()
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c.rem_euclid(m as i64) != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn deg2(&self) -> usize {
        *self.deg2.get_or_init(|| degree_f2(self.table))
    }

    pub fn spectrum(&self) -> &FourierSpectrum {
        self.spectrum
            .get_or_init(|| fourier_transform(self.table).expect("within cap"))
    }

    pub fn sparsity(&self) -> usize {
        self.spectrum().sparsity()
    }

    pub fn depends_on_all(&self) -> bool {
        *self
            .depends_on_all
            .get_or_init(|| self.table.depends_on_all())
    }
}

type CheckFn = fn(&Profile<'_>, &CheckConfig) -> Outcome;

/// A registered check.
#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub statement: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, profile: &Profile<'_>, config: &CheckConfig) -> Outcome {
        (self.run)(profile, config)
    }
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

fn verdict(ok: bool, observed: Value) -> Outcome {
    if ok {
        Outcome::Pass(observed)
    } else {
        Outcome::Fail(observed)
    }
}

macro_rules! need {
    ($opt:expr, $why:literal) => {
        match $opt {
            Some(v) => v,
            None => return Outcome::Skip($why.into()),
        }
    };
}

fn modular_bound(p: &Profile<'_>, m: u64) -> Outcome {
    let (deg, alt, deg2, degm) = (p.deg(), p.alt(), p.deg2(), p.deg_m(m));
    verdict(
        deg <= alt * deg2 * degm,
        json!({"deg": deg, "alt": alt, "deg_2": deg2, "m": m, "deg_m": degm}),
    )
}

fn all_chains(n: usize) -> Vec<Chain> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Chain>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Chain::new(prefix.clone()).expect("permutation"));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn log2(x: usize) -> f64 {
    (x as f64).log2()
}

static REGISTRY: &[Check] = &[
    Check {
        name: "s-le-bs",
        kind: CheckKind::Assert,
        statement: "s(f) <= bs(f)",
        run: |p, _| {
            let bs = need!(p.bs(), "arity above bs cap");
            verdict(p.s() <= bs, json!({"s": p.s(), "bs": bs}))
        },
    },
    Check {
        name: "sqrt-bs-le-deg",
        kind: CheckKind::Assert,
        statement: "sqrt(bs(f)) <= deg(f)",
        run: |p, _| {
            let bs = need!(p.bs(), "arity above bs cap");
            verdict(bs <= p.deg() * p.deg(), json!({"bs": bs, "deg": p.deg()}))
        },
    },
    Check {
        name: "deg-le-bs-cubed",
        kind: CheckKind::Assert,
        statement: "deg(f) <= bs(f)^3",
        run: |p, _| {
            let bs = need!(p.bs(), "arity above bs cap");
            verdict(p.deg() <= bs.pow(3), json!({"bs": bs, "deg": p.deg()}))
        },
    },
    Check {
        name: "inf-le-s",
        kind: CheckKind::Assert,
        statement: "I[f] <= s(f)",
        run: |p, _| {
            let total = p.total_sensitivity();
            verdict(
                total <= (p.s() as i128) << p.n(),
                json!({"sum_s": total as i64, "s": p.s()}),
            )
        },
    },
    Check {
        name: "inf-le-deg",
        kind: CheckKind::Assert,
        statement: "I[f] <= deg(f)",
        run: |p, _| {
            let total = p.total_sensitivity();
            verdict(
                total <= (p.deg() as i128) << p.n(),
                json!({"sum_s": total as i64, "deg": p.deg()}),
            )
        },
    },
    Check {
        name: "bs-le-c",
        kind: CheckKind::Assert,
        statement: "bs(f) <= C(f)",
        run: |p, _| {
            let bs = need!(p.bs(), "arity above bs cap");
            let c = need!(p.c(), "arity above C cap");
            verdict(bs <= c, json!({"bs": bs, "C": c}))
        },
    },
    Check {
        name: "c-le-dt",
        kind: CheckKind::Assert,
        statement: "C(f) <= DT(f)",
        run: |p, _| {
            let c = need!(p.c(), "arity above C cap");
            let dt = need!(p.dt(), "arity above DT cap");
            verdict(c <= dt, json!({"C": c, "DT": dt}))
        },
    },
    Check {
        name: "deg-le-dt",
        kind: CheckKind::Assert,
        statement: "deg(f) <= DT(f)",
        run: |p, _| {
            let dt = need!(p.dt(), "arity above DT cap");
            verdict(p.deg() <= dt, json!({"deg": p.deg(), "DT": dt}))
        },
    },
    Check {
        name: "alt-vs-dc",
        kind: CheckKind::Assert,
        statement: "alt(f) in {2dc(f)-1, 2dc(f), 2dc(f)+1}",
        run: |p, _| {
            let (alt, dc) = (p.alt() as i64, p.dc() as i64);
            verdict(
                (2 * dc - 1..=2 * dc + 1).contains(&alt),
                json!({"alt": alt, "dc": dc}),
            )
        },
    },
    Check {
        name: "dc-le-exp-dt",
        kind: CheckKind::Assert,
        statement: "dc(f) <= 2^DT(f) - 1",
        run: |p, _| {
            let dt = need!(p.dt(), "arity above DT cap");
            verdict(p.dc() < 1 << dt, json!({"dc": p.dc(), "DT": dt}))
        },
    },
    Check {
        name: "alt-le-exp-dt",
        kind: CheckKind::Assert,
        statement: "alt(f) <= 2^(DT(f)+1) - 1",
        run: |p, _| {
            let dt = need!(p.dt(), "arity above DT cap");
            verdict(p.alt() < 1 << (dt + 1), json!({"alt": p.alt(), "DT": dt}))
        },
    },
    Check {
        name: "negs-le-dt",
        kind: CheckKind::Assert,
        statement: "negs(f) = ceil(log2(1 + dc(f))) <= DT(f)",
        run: |p, _| {
            let dt = need!(p.dt(), "arity above DT cap");
            let negs = circuit_negations(p.dc());
            verdict(
                negs <= dt,
                json!({"negs": negs, "negs_formula": p.dc(), "DT": dt}),
            )
        },
    },
    Check {
        name: "deg-alt-modular-m2",
        kind: CheckKind::Assert,
        statement: "deg(f) <= alt(f) * deg_2(f) * deg_2(f)",
        run: |p, _| modular_bound(p, 2),
    },
    Check {
        name: "deg-alt-modular-m3",
        kind: CheckKind::Assert,
        statement: "deg(f) <= alt(f) * deg_2(f) * deg_3(f)",
        run: |p, _| modular_bound(p, 3),
    },
    Check {
        name: "deg-alt-modular-m4",
        kind: CheckKind::Assert,
        statement: "deg(f) <= alt(f) * deg_2(f) * deg_4(f)",
        run: |p, _| modular_bound(p, 4),
    },
    Check {
        name: "deg-alt-modular-m5",
        kind: CheckKind::Assert,
        statement: "deg(f) <= alt(f) * deg_2(f) * deg_5(f)",
        run: |p, _| modular_bound(p, 5),
    },
    Check {
        name: "deg-alt-modular-m6",
        kind: CheckKind::Assert,
        statement: "deg(f) <= alt(f) * deg_2(f) * deg_6(f)",
        run: |p, _| modular_bound(p, 6),
    },
    Check {
        name: "log-sparsity-le-2deg",
        kind: CheckKind::Assert,
        statement: "log2 sparsity(f) <= 2 deg(f)",
        run: |p, _| {
            let (sp, deg) = (p.sparsity(), p.deg());
            verdict(
                (sp as u128) <= 1u128 << (2 * deg),
                json!({"sparsity": sp, "deg": deg}),
            )
        },
    },
    Check {
        name: "deg2-le-log-sparsity",
        kind: CheckKind::Assert,
        statement: "deg_2(f) > 1 implies deg_2(f) <= log2 sparsity(f)",
        run: |p, _| {
            let deg2 = p.deg2();
            if deg2 <= 1 {
                return Outcome::Skip("deg_2 <= 1".into());
            }
            let sp = p.sparsity();
            verdict(
                1u128 << deg2 <= sp as u128,
                json!({"deg_2": deg2, "sparsity": sp}),
            )
        },
    },
    Check {
        name: "weighted-l1-ge-n",
        kind: CheckKind::Assert,
        statement: "f depends on all inputs implies sum_S |F(S)| |S| >= n",
        run: |p, _| {
            if !p.depends_on_all() {
                return Outcome::Skip("does not depend on all inputs".into());
            }
            let scaled = p.spectrum().scaled_weighted_l1();
            let n = p.n() as i128;
            verdict(
                scaled >= n << p.n(),
                json!({
                    "weighted": crate::rational::to_text(&crate::rational::dyadic(scaled, p.n())),
                    "n": p.n(),
                }),
            )
        },
    },
    Check {
        name: "s-sqrt-sparsity-ge-n",
        kind: CheckKind::Assert,
        statement: "f depends on all inputs implies s(f) sqrt(sparsity(f)) >= n",
        run: |p, _| {
            if !p.depends_on_all() {
                return Outcome::Skip("does not depend on all inputs".into());
            }
            let (s, sp, n) = (p.s() as u128, p.sparsity() as u128, p.n() as u128);
            verdict(
                s * s * sp >= n * n,
                json!({"s": p.s(), "sparsity": p.sparsity(), "n": p.n()}),
            )
        },
    },
    Check {
        name: "deg-exp-deg2-ge-n",
        kind: CheckKind::Assert,
        statement: "f depends on all inputs implies deg(f) >= n / 2^deg_2(f)",
        run: |p, _| {
            if !p.depends_on_all() {
                return Outcome::Skip("does not depend on all inputs".into());
            }
            let (deg, deg2) = (p.deg(), p.deg2());
            verdict(
                (deg as u128) << deg2 >= p.n() as u128,
                json!({"deg": deg, "deg_2": deg2, "n": p.n()}),
            )
        },
    },
    Check {
        name: "inf-le-alt-sqrt-n",
        kind: CheckKind::Assert,
        statement: "I[f] <= alt(f) sqrt(n)",
        run: |p, _| {
            let total = p.total_sensitivity();
            let alt = p.alt() as i128;
            let bound = alt * alt * p.n() as i128;
            verdict(
                total * total <= bound << (2 * p.n()),
                json!({"sum_s": total as i64, "alt": p.alt(), "n": p.n()}),
            )
        },
    },
    Check {
        name: "inf-le-alt-deg2-sq",
        kind: CheckKind::Assert,
        statement: "I[f] <= alt(f) deg_2(f)^2",
        run: |p, _| {
            let total = p.total_sensitivity();
            let bound = (p.alt() * p.deg2() * p.deg2()) as i128;
            verdict(
                total <= bound << p.n(),
                json!({"sum_s": total as i64, "alt": p.alt(), "deg_2": p.deg2()}),
            )
        },
    },
    Check {
        name: "fourier-influence",
        kind: CheckKind::Assert,
        statement: "I[f] = sum_S |S| F(S)^2",
        run: |p, _| {
            let total = p.total_sensitivity();
            let spectral = p.spectrum().scaled_influence();
            verdict(
                total << p.n() == spectral,
                json!({"sum_s": total as i64, "scaled_spectral": spectral as i64}),
            )
        },
    },
    Check {
        name: "parseval",
        kind: CheckKind::Assert,
        statement: "sum_S F(S)^2 = 1",
        run: |p, _| {
            let sum = p.spectrum().sum_of_squares();
            verdict(
                p.spectrum().parseval_holds(),
                json!({"scaled_sum": sum as i64}),
            )
        },
    },
    Check {
        name: "sensitivity-moment",
        kind: CheckKind::Assert,
        statement: "sum_S |S|^2 F(S)^2 = E_x[s(f,x)^2]",
        run: |p, _| {
            let s2: i128 = p
                .s_profile()
                .iter()
                .map(|&s| (s as i128) * (s as i128))
                .sum();
            let w2 = p.spectrum().spectral_sums().weighted2;
            let avg = crate::rational::dyadic(s2, p.n());
            verdict(
                w2 == avg,
                json!({
                    "weighted2": crate::rational::to_text(&w2),
                    "mean_s_squared": crate::rational::to_text(&avg),
                }),
            )
        },
    },
    Check {
        name: "witness-chain",
        kind: CheckKind::Assert,
        statement: "the DP witness chain attains alt(f)",
        run: |p, _| {
            let r = p.alternation();
            let along = alternation_along(p.table, &r.witness).expect("arity matches");
            verdict(
                along == r.alt,
                json!({"alt": r.alt, "along_witness": along}),
            )
        },
    },
    Check {
        name: "chain-oracle",
        kind: CheckKind::Assert,
        statement: "DP alt(f) and dc(f) equal the maxima over all n! chains",
        run: |p, cfg| {
            if p.n() > cfg.chain_oracle_max_arity {
                return Outcome::Skip("arity above chain-oracle limit".into());
            }
            let chains = all_chains(p.n());
            let alt = chains
                .iter()
                .map(|c| alternation_along(p.table, c).unwrap())
                .max()
                .unwrap_or(0);
            let dc = chains
                .iter()
                .map(|c| decrease_along(p.table, c).unwrap())
                .max()
                .unwrap_or(0);
            verdict(
                alt == p.alt() && dc == p.dc(),
                json!({"alt_dp": p.alt(), "alt_chains": alt, "dc_dp": p.dc(), "dc_chains": dc}),
            )
        },
    },
    Check {
        name: "monotone-iff-alt",
        kind: CheckKind::Assert,
        statement: "f monotone iff alt(f) <= 1 and f(0^n) <= f(1^n)",
        run: |p, _| {
            let mono = is_monotone(p.table);
            let t = p.table;
            let by_alt = p.alt() <= 1 && t.get(0) <= t.get(t.len() as u64 - 1);
            verdict(mono == by_alt, json!({"monotone": mono, "alt": p.alt()}))
        },
    },
    Check {
        name: "monotone-decomposition",
        kind: CheckKind::Assert,
        statement: "f is the XOR of alt(f) monotone functions (negated when f(0^n) = 1)",
        run: |p, _| {
            let d = monotone_decomposition(p.table).expect("within cap");
            let parts_ok = d.parts.len() == p.alt() && d.parts.iter().all(is_monotone);
            let rebuilt = d.reconstruct(p.n()).expect("same arity") == *p.table;
            verdict(
                parts_ok && rebuilt,
                json!({"parts": d.parts.len(), "alt": p.alt(), "exact": rebuilt}),
            )
        },
    },
    Check {
        name: "bs-over-s-alt-sq",
        kind: CheckKind::Ratio,
        statement: "observed bs(f) / (s(f) alt(f)^2)",
        run: |p, _| {
            let bs = need!(p.bs(), "arity above bs cap");
            let denom = p.s() * p.alt() * p.alt();
            if denom == 0 {
                return Outcome::Skip("s(f) alt(f) = 0".into());
            }
            Outcome::Ratio(
                bs as f64 / denom as f64,
                json!({"bs": bs, "s": p.s(), "alt": p.alt()}),
            )
        },
    },
    Check {
        name: "log-n-over-s",
        kind: CheckKind::Ratio,
        statement: "observed log2(n) / s(f) on functions depending on all inputs",
        run: |p, _| {
            if !p.depends_on_all() || p.n() < 2 {
                return Outcome::Skip("needs n >= 2 relevant inputs".into());
            }
            Outcome::Ratio(log2(p.n()) / p.s() as f64, json!({"s": p.s(), "n": p.n()}))
        },
    },
    Check {
        name: "log-n-over-deg2",
        kind: CheckKind::Ratio,
        statement: "observed log2(n) / deg_2(f) on functions depending on all inputs",
        run: |p, _| {
            if !p.depends_on_all() || p.n() < 2 {
                return Outcome::Skip("needs n >= 2 relevant inputs".into());
            }
            Outcome::Ratio(
                log2(p.n()) / p.deg2() as f64,
                json!({"deg_2": p.deg2(), "alt": p.alt(), "n": p.n()}),
            )
        },
    },
    Check {
        name: "sqrt-deg-log-sparsity",
        kind: CheckKind::Ratio,
        statement: "observed sqrt(deg(f)) / log2 sparsity(f)",
        run: |p, _| {
            let sp = p.sparsity();
            if sp < 2 {
                return Outcome::Skip("sparsity below 2".into());
            }
            Outcome::Ratio(
                (p.deg() as f64).sqrt() / log2(sp),
                json!({"deg": p.deg(), "sparsity": sp, "alt": p.alt()}),
            )
        },
    },
    Check {
        name: "polylog-deg-sparsity",
        kind: CheckKind::Report,
        statement: "deg(f) <= (log2 n)^c implies deg(f) <= (log2 sparsity(f))^c",
        run: |p, cfg| {
            if !p.depends_on_all() || p.n() < 2 {
                return Outcome::Skip("needs n >= 2 relevant inputs".into());
            }
            let c = cfg.polylog_exponent;
            let deg = p.deg() as f64;
            if deg > log2(p.n()).powf(c) {
                return Outcome::Skip("hypothesis deg <= (log2 n)^c fails".into());
            }
            let bound = log2(p.sparsity()).powf(c);
            Outcome::Flag(
                deg > bound,
                json!({"deg": p.deg(), "n": p.n(), "sparsity": p.sparsity(), "c": c}),
            )
        },
    },
    Check {
        name: "polylog-alt-sparsity",
        kind: CheckKind::Report,
        statement:
            "alt(f) <= (log2 n)^c implies deg(f) <= max((log2 sparsity)^3, (log2 sparsity)^(3c))",
        run: |p, cfg| {
            if !p.depends_on_all() || p.n() < 2 {
                return Outcome::Skip("needs n >= 2 relevant inputs".into());
            }
            let c = cfg.polylog_exponent;
            if p.alt() as f64 > log2(p.n()).powf(c) {
                return Outcome::Skip("hypothesis alt <= (log2 n)^c fails".into());
            }
            let ls = log2(p.sparsity());
            let bound = ls.powi(3).max(ls.powf(3.0 * c));
            Outcome::Flag(
                p.deg() as f64 > bound,
                json!({"deg": p.deg(), "alt": p.alt(), "sparsity": p.sparsity(), "c": c}),
            )
        },
    },
];

/// All registered checks, in a fixed order.
pub fn registry() -> &'static [Check] {
    REGISTRY
}

pub fn find_check(name: &str) -> Result<&'static Check> {
    REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

/// Resolves a list of names; `all` (or an empty list) selects everything.
pub fn select_checks<S: AsRef<str>>(names: &[S]) -> Result<Vec<&'static Check>> {
    if names.is_empty() || names.iter().any(|n| n.as_ref() == "all") {
        return Ok(REGISTRY.iter().collect());
    }
    names.iter().map(|n| find_check(n.as_ref())).collect()
}
