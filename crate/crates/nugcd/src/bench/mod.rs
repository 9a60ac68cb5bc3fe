//! Benchmark suites, polynomial text parsing, the Euclidean-division
//! instability demo, and CSV report emission for the CLI.

mod euclid;
mod expr;
mod gens;

pub use euclid::{euclid_demo, EuclidOutcome, EuclidReport, EuclidStep};
pub use expr::{parse_expression, parse_polynomial};
pub use gens::{
    coefficient_error, gen_test1, gen_test2, gen_test3, gen_test5, gen_test6, BenchCase,
};

use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::driver::{uvgcd, GcdConfig};
use crate::error::{Error, Result};

/// One executed case.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub case: String,
    pub meta: String,
    pub degree: usize,
    pub rho: f64,
    pub kappa: f64,
    pub coef_error: Option<f64>,
    pub ms: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<String>,
}

impl BenchReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,meta,degree,rho,kappa,coef_error,ms\n");
        for r in &self.rows {
            let coef = r.coef_error.map(|e| format!("{e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.case, r.meta, r.degree, r.rho, r.kappa, coef, r.ms
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<BenchReport> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if lineno == 0 || line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 7 {
                return Err(Error::Parse {
                    position: lineno,
                    message: format!("expected 7 CSV fields, got {}", fields.len()),
                });
            }
            let parse_f = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|e| Error::Parse { position: lineno, message: e.to_string() })
            };
            rows.push(BenchRow {
                case: fields[0].to_string(),
                meta: fields[1].to_string(),
                degree: fields[2].parse().map_err(|_| Error::Parse {
                    position: lineno,
                    message: "bad degree".into(),
                })?,
                rho: parse_f(fields[3])?,
                kappa: parse_f(fields[4])?,
                coef_error: if fields[5].is_empty() { None } else { Some(parse_f(fields[5])?) },
                ms: parse_f(fields[6])?,
                passed: true,
            });
        }
        Ok(BenchReport { rows, failures: Vec::new() })
    }
}

/// Expands a selection string like `test1:n=6,10,16,test2,test6:[2,1,1,0]`
/// into concrete cases. A bare suite name takes its default parameters.
pub fn expand_selection(selection: &str) -> Result<Vec<BenchCase>> {
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    for raw in selection.split(',') {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        let is_new = tok.starts_with("test");
        if is_new {
            let (name, first_arg) = match tok.split_once(':') {
                Some((n, a)) => (n.to_string(), Some(a.to_string())),
                None => (tok.to_string(), None),
            };
            groups.push((name, first_arg.into_iter().collect()));
        } else if let Some(last) = groups.last_mut() {
            last.1.push(tok.to_string());
        } else {
            return Err(Error::UnknownSuite(tok.to_string()));
        }
    }
    let mut cases = Vec::new();
    for (name, args) in groups {
        match name.as_str() {
            "test1" => {
                let ns = parse_int_list(&args, "n", &[6, 10, 16])?;
                for n in ns {
                    cases.push(gen_test1(n)?);
                }
            }
            "test2" => cases.extend(gen_test2()),
            "test3" => {
                let ns = parse_int_list(&args, "n", &[50, 100, 200])?;
                for n in ns {
                    cases.push(gen_test3(n, 1000 + n as u64)?);
                }
            }
            "test5" => {
                let counts = parse_int_list(&args, "count", &[100])?;
                let count = counts.first().copied().unwrap_or(100);
                for seed in 0..count {
                    cases.push(gen_test5(seed as u64));
                }
            }
            "test6" => {
                let sets = if args.is_empty() {
                    vec![[2, 1, 1, 0], [3, 2, 1, 0], [4, 3, 2, 1], [5, 3, 2, 1], [9, 6, 4, 2]]
                } else {
                    parse_mult_sets(&args)?
                };
                for ms in sets {
                    cases.push(gen_test6(ms)?);
                }
            }
            other => return Err(Error::UnknownSuite(other.to_string())),
        }
    }
    Ok(cases)
}

fn parse_int_list(args: &[String], key: &str, default: &[usize]) -> Result<Vec<usize>> {
    if args.is_empty() {
        return Ok(default.to_vec());
    }
    let mut out = Vec::new();
    for (i, a) in args.iter().enumerate() {
        let v = if i == 0 {
            match a.split_once('=') {
                Some((k, v)) if k == key => v,
                Some((k, _)) => {
                    return Err(Error::UnknownSuite(format!("expected `{key}=`, got `{k}=`")))
                }
                None => a.as_str(),
            }
        } else {
            a.as_str()
        };
        out.push(v.trim().parse::<usize>().map_err(|_| Error::UnknownSuite(format!("bad integer `{v}`")))?);
    }
    Ok(out)
}

fn parse_mult_sets(args: &[String]) -> Result<Vec<[usize; 4]>> {
    // args arrive comma-split: "[2" "1" "1" "0]" "[4" ... — stitch on brackets
    let mut sets = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    for a in args {
        let t = a.trim().trim_start_matches('[');
        let closes = t.ends_with(']');
        let t = t.trim_end_matches(']');
        if !t.is_empty() {
            cur.push(t.parse().map_err(|_| Error::UnknownSuite(format!("bad multiplicity `{t}`")))?);
        }
        if closes {
            if cur.len() != 4 {
                return Err(Error::UnknownSuite("multiplicity set needs 4 entries".into()));
            }
            sets.push([cur[0], cur[1], cur[2], cur[3]]);
            cur.clear();
        }
    }
    if !cur.is_empty() {
        return Err(Error::UnknownSuite("unterminated multiplicity set".into()));
    }
    Ok(sets)
}

/// Runs one case and evaluates its regression bounds.
pub fn run_case(case: &BenchCase, base: &GcdConfig) -> BenchRow {
    let config = case.config(base);
    let start = Instant::now();
    let result = uvgcd(&case.pair, &config);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(res) => {
            let coef_error = case
                .true_gcd
                .as_ref()
                .filter(|_| case.expected_degree == Some(res.degree))
                .map(|t| coefficient_error(&res.triplet.u, t));
            let mut passed = true;
            if let Some(want) = case.expected_degree {
                passed &= res.degree == want;
            }
            if let (Some(target), true) = (case.nearness_target, case.expected_degree == Some(res.degree)) {
                passed &= res.triplet.rho > target / 10.0 && res.triplet.rho < target * 10.0;
            }
            if let (Some(bound), Some(err)) = (case.error_bound, coef_error) {
                passed &= err <= bound;
            } else if case.error_bound.is_some() && coef_error.is_none() {
                passed = false;
            }
            BenchRow {
                case: case.name.clone(),
                meta: case.meta.clone(),
                degree: res.degree,
                rho: res.triplet.rho,
                kappa: res.triplet.kappa,
                coef_error,
                ms,
                passed,
            }
        }
        Err(_) => BenchRow {
            case: case.name.clone(),
            meta: case.meta.clone(),
            degree: 0,
            rho: f64::NAN,
            kappa: f64::NAN,
            coef_error: None,
            ms,
            passed: false,
        },
    }
}

/// Executes the selection, writes the CSV when a path is given, and returns
/// the report. Rows are ordered by case name regardless of worker count.
pub fn run_suite(
    selection: &str,
    base: &GcdConfig,
    out: Option<&Path>,
    workers: usize,
) -> Result<BenchReport> {
    let cases = expand_selection(selection)?;
    let rows = if workers <= 1 {
        cases.iter().map(|c| run_case(c, base)).collect::<Vec<_>>()
    } else {
        let next = AtomicUsize::new(0);
        let rows = Mutex::new(Vec::with_capacity(cases.len()));
        std::thread::scope(|scope| {
            for _ in 0..workers.min(cases.len().max(1)) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= cases.len() {
                        break;
                    }
                    let row = run_case(&cases[i], base);
                    rows.lock().unwrap().push(row);
                });
            }
        });
        rows.into_inner().unwrap()
    };
    let mut rows = rows;
    rows.sort_by(|a, b| a.case.cmp(&b.case));
    let failures = rows.iter().filter(|r| !r.passed).map(|r| r.case.clone()).collect();
    let report = BenchReport { rows, failures };
    if let Some(path) = out {
        let mut file = std::fs::File::create(path)?;
        file.write_all(report.to_csv().as_bytes())?;
    }
    Ok(report)
}
