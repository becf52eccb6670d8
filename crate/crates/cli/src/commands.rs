use std::fmt::Write as _;
use std::path::Path;

use fdecomp::fdecomp::oracle_budget_from_env;
use fdecomp::recsynth::{minimize, stride};
use fdecomp::sumstats::{moments, standardized_distribution, CountTable, System};
use fdecomp::{
    all_legal_decompositions, decompose, nonnegative_multiple_search, parse_rule,
    synthesize_recurrence, verify_recurrence, DecompError, FRule, FSequence, IntPoly,
    NonnegSearch, RecurrenceError,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::output::{dec, json, Csv};
use crate::{
    CheckUniqueArgs, DecompArgs, Emit, Format, NonnegArgs, RecurrenceArgs, SeqArgs, StatsArgs,
};

pub enum Failure {
    /// Bad input; exit code 1.
    Usage(String),
    /// A mathematical check failed; exit code 2. `partial` goes to stdout.
    Check {
        message: String,
        partial: Option<String>,
    },
}

type Out = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Inline shorthand first, then a rule file.
fn load_rule(arg: &str) -> Result<FRule, Failure> {
    match arg.parse::<FRule>() {
        Ok(rule) => Ok(rule),
        Err(short_err) => {
            let path = Path::new(arg);
            if !path.is_file() {
                return Err(usage(format!(
                    "`{arg}` is neither a rule shorthand ({short_err}) nor a readable file"
                )));
            }
            let doc = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("reading {arg}: {e}")))?;
            parse_rule(&doc).map_err(|e| usage(format!("{arg}: {e}")))
        }
    }
}

#[derive(Serialize)]
struct SeqOut {
    rule: String,
    start: usize,
    terms: Vec<String>,
}

pub fn seq(args: &SeqArgs, format: Format) -> Out {
    let rule = load_rule(&args.rule.rule)?;
    let s = FSequence::new(rule.clone());
    let end = args
        .start
        .checked_add(args.count)
        .ok_or_else(|| usage("start + count overflows"))?;
    let terms = s.terms(end);
    let shown = &terms[args.start..];
    Ok(match format {
        Format::Json => json(&SeqOut {
            rule: rule.to_string(),
            start: args.start,
            terms: shown.iter().map(dec).collect(),
        }),
        Format::Csv => {
            let mut csv = Csv::new(&["n", "value"]);
            for (i, t) in shown.iter().enumerate() {
                csv.row([(args.start + i).to_string(), t.to_string()]);
            }
            csv.finish()
        }
        Format::Plain => shown
            .iter()
            .enumerate()
            .map(|(i, t)| format!("a_{} = {t}\n", args.start + i))
            .collect(),
    })
}

#[derive(Serialize)]
struct DecompOut {
    x: String,
    indices: Vec<usize>,
    summands: Vec<String>,
}

pub fn decomp(args: &DecompArgs, format: Format) -> Out {
    let rule = load_rule(&args.rule.rule)?;
    let x: BigUint = args
        .x
        .trim()
        .parse()
        .map_err(|_| usage(format!("--x must be a nonnegative integer, got `{}`", args.x)))?;
    let s = FSequence::new(rule);
    let d = decompose(&s, &x);
    let summands = d.summands(&s);
    Ok(match format {
        Format::Json => json(&DecompOut {
            x: x.to_string(),
            indices: d.indices.clone(),
            summands: summands.iter().map(dec).collect(),
        }),
        Format::Csv => {
            let mut csv = Csv::new(&["index", "summand"]);
            for (i, v) in d.indices.iter().zip(&summands) {
                csv.row([i.to_string(), v.to_string()]);
            }
            csv.finish()
        }
        Format::Plain => {
            let parts: Vec<String> = d
                .indices
                .iter()
                .zip(&summands)
                .map(|(i, v)| format!("{v} (a_{i})"))
                .collect();
            if parts.is_empty() {
                format!("{x} = 0\n")
            } else {
                format!("{x} = {}\n", parts.join(" + "))
            }
        }
    })
}

#[derive(Serialize)]
struct Counterexample {
    x: String,
    greedy: Vec<usize>,
    found: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct UniqueReport {
    rule: String,
    x_max: String,
    index_cap: usize,
    checked: u64,
    status: &'static str,
    counterexample: Option<Counterexample>,
}

impl UniqueReport {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut csv = Csv::new(&["rule", "x_max", "index_cap", "checked", "status"]);
                csv.row([
                    self.rule.clone(),
                    self.x_max.clone(),
                    self.index_cap.to_string(),
                    self.checked.to_string(),
                    self.status.to_string(),
                ]);
                csv.finish()
            }
            Format::Plain => {
                let mut s = format!(
                    "{}: {} of 0..={} checked, {}\n",
                    self.rule, self.checked, self.x_max, self.status
                );
                if let Some(c) = &self.counterexample {
                    let _ = writeln!(s, "x = {}: greedy {:?}, legal {:?}", c.x, c.greedy, c.found);
                }
                s
            }
        }
    }
}

pub fn check_unique(args: &CheckUniqueArgs, format: Format) -> Out {
    let rule = load_rule(&args.rule.rule)?;
    let s = FSequence::new(rule.clone());
    let cap = args
        .index_cap
        .unwrap_or_else(|| s.index_of_floor(&BigUint::from(args.x_max.max(1))));
    let budget = oracle_budget_from_env();
    let mut report = UniqueReport {
        rule: rule.to_string(),
        x_max: args.x_max.to_string(),
        index_cap: cap,
        checked: 0,
        status: "unique",
        counterexample: None,
    };
    for x in 0..=args.x_max {
        let xb = BigUint::from(x);
        let found = match all_legal_decompositions(&s, &xb, cap, budget) {
            Ok(found) => found,
            Err(DecompError::BudgetExceeded { budget }) => {
                report.status = "budget_exceeded";
                return Err(Failure::Check {
                    message: format!("oracle budget of {budget} nodes exceeded at x = {x}"),
                    partial: Some(report.render(format)),
                });
            }
            Err(e) => return Err(usage(e)),
        };
        let greedy = decompose(&s, &xb).indices;
        if found.len() != 1 || found[0] != greedy {
            report.status = "counterexample";
            report.counterexample = Some(Counterexample {
                x: x.to_string(),
                greedy,
                found,
            });
            return Err(Failure::Check {
                message: format!("x = {x} does not decompose uniquely"),
                partial: Some(report.render(format)),
            });
        }
        report.checked += 1;
    }
    Ok(report.render(format))
}

#[derive(Serialize)]
struct RecurrenceOut {
    rule: String,
    order: usize,
    coefficients: Vec<String>,
    valid_from: usize,
    minimized: bool,
    verify_horizon: usize,
    /// `true`, or `"unknown_beyond_<D>"` when no multiple exists up to degree D.
    nonneg_feasible: Value,
    nonneg_degree: Option<usize>,
}

fn recurrence_failure(e: RecurrenceError) -> Failure {
    match e {
        RecurrenceError::UnsupportedRule(_) => usage(e),
        other => Failure::Check {
            message: other.to_string(),
            partial: None,
        },
    }
}

pub fn recurrence(args: &RecurrenceArgs, format: Format) -> Out {
    let rule = load_rule(&args.rule.rule)?;
    stride(&rule).map_err(recurrence_failure)?;
    let s = FSequence::new(rule.clone());
    let synthesized = synthesize_recurrence(&rule).map_err(recurrence_failure)?;
    let rec = if args.minimize {
        minimize(&s, &synthesized, args.verify_horizon).map_err(recurrence_failure)?
    } else {
        synthesized
    };
    if !verify_recurrence(&s, &rec, args.verify_horizon) {
        return Err(Failure::Check {
            message: format!("recurrence fails within {} terms of n = {}", args.verify_horizon, rec.valid_from()),
            partial: None,
        });
    }
    let d = args.nonneg_max_degree;
    let search = if d >= rec.order() {
        Some(nonnegative_multiple_search(&rec.charpoly(), d).map_err(recurrence_failure)?)
    } else {
        None
    };
    let (feasible, degree) = match search {
        Some(NonnegSearch::Feasible { degree, .. }) => (Value::Bool(true), Some(degree)),
        _ => (Value::String(format!("unknown_beyond_{d}")), None),
    };
    Ok(match format {
        Format::Json => json(&RecurrenceOut {
            rule: rule.to_string(),
            order: rec.order(),
            coefficients: rec.coefficients().iter().map(dec).collect(),
            valid_from: rec.valid_from(),
            minimized: args.minimize,
            verify_horizon: args.verify_horizon,
            nonneg_feasible: feasible,
            nonneg_degree: degree,
        }),
        Format::Csv => {
            let mut csv = Csv::new(&["lag", "coefficient"]);
            for (i, c) in rec.coefficients().iter().enumerate() {
                csv.row([(i + 1).to_string(), c.to_string()]);
            }
            csv.finish()
        }
        Format::Plain => {
            let nonneg = match &feasible {
                Value::Bool(_) => format!("yes, degree {}", degree.unwrap_or_default()),
                _ => format!("none up to degree {d}"),
            };
            format!("{rec}\nnonnegative multiple: {nonneg}\n")
        }
    })
}

#[derive(Serialize)]
struct StatsRow {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ks: Option<Option<f64>>,
}

#[derive(Serialize)]
struct StatsOut {
    system: String,
    emit: &'static str,
    rows: Vec<StatsRow>,
}

pub fn stats(args: &StatsArgs, format: Format) -> Out {
    let system: System = args.system.parse().map_err(usage)?;
    let table = CountTable::build(system, args.n).map_err(usage)?;
    let ns: Vec<usize> = if args.all {
        (0..=args.n).collect()
    } else {
        vec![args.n]
    };
    let mut rows = Vec::with_capacity(ns.len());
    for &n in &ns {
        let mut row = StatsRow {
            n,
            counts: None,
            mean: None,
            variance: None,
            ks: None,
        };
        match args.emit {
            Emit::Table => {
                row.counts = Some(table.row(n).map_err(usage)?.iter().map(dec).collect());
            }
            Emit::Moments | Emit::Ks => {
                let m = moments(&table, n).map_err(usage)?;
                let show = |v: &BigRational| {
                    if args.exact {
                        v.to_string()
                    } else {
                        v.to_f64().map_or_else(|| "nan".into(), |f| f.to_string())
                    }
                };
                row.mean = Some(show(&m.mean));
                row.variance = Some(show(&m.variance));
                if args.emit == Emit::Ks {
                    row.ks = Some(standardized_distribution(&table, n).ok().map(|r| r.ks));
                }
            }
        }
        rows.push(row);
    }
    let emit = match args.emit {
        Emit::Table => "table",
        Emit::Moments => "moments",
        Emit::Ks => "ks",
    };
    Ok(match format {
        Format::Json => json(&StatsOut {
            system: system.to_string(),
            emit,
            rows,
        }),
        Format::Csv => {
            let mut csv = match args.emit {
                Emit::Table => Csv::new(&["n", "k", "count"]),
                Emit::Moments => Csv::new(&["n", "mean", "variance"]),
                Emit::Ks => Csv::new(&["n", "mean", "variance", "ks"]),
            };
            for r in &rows {
                match (&r.counts, &r.ks) {
                    (Some(counts), _) => {
                        for (k, c) in counts.iter().enumerate() {
                            csv.row([r.n.to_string(), k.to_string(), c.clone()]);
                        }
                    }
                    (None, ks) => {
                        let mut fields = vec![
                            r.n.to_string(),
                            r.mean.clone().unwrap_or_default(),
                            r.variance.clone().unwrap_or_default(),
                        ];
                        if let Some(ks) = ks {
                            fields.push(ks.map(|v| v.to_string()).unwrap_or_default());
                        }
                        csv.row(fields);
                    }
                }
            }
            csv.finish()
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &rows {
                let _ = write!(s, "n = {}:", r.n);
                if let Some(counts) = &r.counts {
                    let _ = write!(s, " {}", counts.join(" "));
                }
                if let (Some(m), Some(v)) = (&r.mean, &r.variance) {
                    let _ = write!(s, " mean {m}, variance {v}");
                }
                if let Some(Some(ks)) = r.ks {
                    let _ = write!(s, ", ks {ks}");
                }
                s.push('\n');
            }
            s
        }
    })
}

#[derive(Serialize)]
struct NonnegOut {
    charpoly: String,
    max_degree: usize,
    feasible: bool,
    degree: Option<usize>,
    /// Highest power first, exact rationals.
    multiplier: Option<Vec<String>>,
    product: Option<Vec<String>>,
}

fn parse_charpoly(s: &str) -> Result<IntPoly, Failure> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| usage(format!("--charpoly: `{}` is not an integer", t.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::from_descending(&coeffs))
}

fn minimal_charpoly(arg: &str) -> Result<IntPoly, Failure> {
    let rule = load_rule(arg)?;
    let syn = synthesize_recurrence(&rule).map_err(recurrence_failure)?;
    let min = minimize(&FSequence::new(rule), &syn, 300).map_err(recurrence_failure)?;
    Ok(min.charpoly())
}

pub fn nonneg(args: &NonnegArgs, format: Format) -> Out {
    let poly = match (&args.charpoly, &args.rule) {
        (Some(c), _) => parse_charpoly(c)?,
        (None, Some(r)) => minimal_charpoly(r)?,
        (None, None) => return Err(usage("one of --charpoly or --rule is required")),
    };
    let result = nonnegative_multiple_search(&poly, args.max_degree).map_err(usage)?;
    let desc = |v: &[BigRational]| v.iter().rev().map(dec).collect::<Vec<_>>();
    let out = match &result {
        NonnegSearch::Feasible {
            degree,
            multiplier,
            product,
        } => NonnegOut {
            charpoly: poly.to_string(),
            max_degree: args.max_degree,
            feasible: true,
            degree: Some(*degree),
            multiplier: Some(desc(multiplier)),
            product: Some(desc(product)),
        },
        NonnegSearch::Infeasible { max_degree } => NonnegOut {
            charpoly: poly.to_string(),
            max_degree: *max_degree,
            feasible: false,
            degree: None,
            multiplier: None,
            product: None,
        },
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut csv = Csv::new(&["max_degree", "feasible", "degree"]);
            csv.row([
                out.max_degree.to_string(),
                out.feasible.to_string(),
                out.degree.map(|d| d.to_string()).unwrap_or_default(),
            ]);
            csv.finish()
        }
        Format::Plain => match &out.product {
            Some(p) => format!(
                "{}: multiple of degree {} with coefficients {}\n",
                out.charpoly,
                out.degree.unwrap_or_default(),
                p.join(" ")
            ),
            None => format!(
                "{}: no nonnegative-coefficient multiple up to degree {}\n",
                out.charpoly, out.max_degree
            ),
        },
    })
}
