//! Flat key-value benchmark configuration.
//!
//! One `key = value` per line, `#` starts a comment, lists are
//! comma-separated, and per-algorithm parameters use dotted keys such as
//! `alg.tseng-adaptive.mu`. The format parses with no dependencies and
//! diffs line by line.
//!
//! Recognized keys:
//!
//! * `problem`: problem family tag, currently only `example41`
//! * `dims`: list of positive integers, one benchmark block per dimension
//! * `thetas`: list of positive reals, the operator shape parameter
//! * `algorithms`: list of solver tags, see `vi-solve list-algs`
//! * `tolerance` (default `1e-8`), `max_iter` (default `5000`),
//!   `repeats` (default `20`), `output_dir` (optional)
//! * `alg.tseng-adaptive.{mu,lambda1,xi_exponent}`
//! * `alg.tseng-linesearch.{gamma,l,mu}` and `alg.iusem.{gamma,l,mu}`
//! * `alg.tseng-fixed.lambda` and `alg.subgrad-extragrad.lambda`

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use vi_core::{AdaptiveParams, FixedParams, LinesearchParams, Method, XiSchedule, ALGORITHM_TAGS};

use crate::bench::PROBLEM_TAGS;
use crate::error::{Error, Result};

/// A validated benchmark configuration with defaults filled in.
#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    pub problem: String,
    /// Problem dimensions, ascending run order.
    pub dims: Vec<usize>,
    pub thetas: Vec<f64>,
    /// Algorithm tags exactly as listed in the spec file.
    pub algorithms: Vec<String>,
    pub tolerance: f64,
    pub max_iter: u64,
    /// Timed repetitions averaged into the reported time.
    pub repeats: u32,
    pub output_dir: Option<PathBuf>,
    adaptive: AdaptiveParams,
    linesearch: LinesearchParams,
    iusem: LinesearchParams,
    fixed: FixedParams,
    subgrad: FixedParams,
}

impl BenchmarkSpec {
    /// The method a tag resolves to under this spec's parameter blocks.
    pub fn method_for(&self, tag: &str) -> Result<Method> {
        let method = match tag {
            "tseng-adaptive" => Method::TsengAdaptive(self.adaptive.clone()),
            "tseng-linesearch" => Method::TsengLinesearch(self.linesearch.clone()),
            "tseng-fixed" => Method::TsengFixed(self.fixed.clone()),
            "subgrad-extragrad" => Method::SubgradExtragrad(self.subgrad.clone()),
            "iusem" => Method::Iusem(self.iusem.clone()),
            other => {
                return Err(Error::Core(vi_core::Error::UnknownAlgorithm {
                    tag: other.to_string(),
                    valid: ALGORITHM_TAGS.join(", "),
                }))
            }
        };
        Ok(method)
    }
}

/// Reads and validates a benchmark spec file.
pub fn load_spec(path: &Path) -> Result<BenchmarkSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::SpecRead {
        path: path.to_path_buf(),
        source,
    })?;
    parse_spec(&text, path)
}

/// Context for value-parse errors: which file, line, and key.
struct KeySite<'a> {
    path: &'a Path,
    line: usize,
    key: &'a str,
}

impl KeySite<'_> {
    fn bad(&self, reason: impl Into<String>) -> Error {
        Error::BadValue {
            path: self.path.to_path_buf(),
            line: self.line,
            key: self.key.to_string(),
            reason: reason.into(),
        }
    }

    fn f64(&self, raw: &str) -> Result<f64> {
        let value: f64 = raw
            .parse()
            .map_err(|_| self.bad(format!("`{raw}` is not a number")))?;
        if !value.is_finite() {
            return Err(self.bad(format!("`{raw}` is not finite")));
        }
        Ok(value)
    }

    fn positive_f64(&self, raw: &str) -> Result<f64> {
        let value = self.f64(raw)?;
        if value <= 0.0 {
            return Err(self.bad(format!("`{raw}` must be positive")));
        }
        Ok(value)
    }

    fn positive_int<T: std::str::FromStr + PartialEq + Default>(&self, raw: &str) -> Result<T> {
        let value: T = raw
            .parse()
            .map_err(|_| self.bad(format!("`{raw}` is not a positive integer")))?;
        if value == T::default() {
            return Err(self.bad(format!("`{raw}` must be at least 1")));
        }
        Ok(value)
    }

    fn list<'v>(&self, raw: &'v str) -> Result<Vec<&'v str>> {
        if raw.is_empty() {
            return Err(self.bad("expected a nonempty comma-separated list"));
        }
        let items: Vec<&str> = raw.split(',').map(str::trim).collect();
        if items.iter().any(|item| item.is_empty()) {
            return Err(self.bad("list has an empty item"));
        }
        Ok(items)
    }
}

fn parse_spec(text: &str, path: &Path) -> Result<BenchmarkSpec> {
    let mut problem = None;
    let mut dims = None;
    let mut thetas = None;
    let mut algorithms: Option<Vec<String>> = None;
    let mut tolerance = None;
    let mut max_iter = None;
    let mut repeats = None;
    let mut output_dir = None;
    let mut adaptive = AdaptiveParams::default();
    let mut linesearch = LinesearchParams::default();
    let mut iusem = LinesearchParams::default();
    let mut fixed = FixedParams::default();
    let mut subgrad = FixedParams::default();

    let mut seen = HashSet::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((raw_key, raw_value)) = content.split_once('=') else {
            return Err(Error::MalformedLine {
                path: path.to_path_buf(),
                line,
                text: content.to_string(),
            });
        };
        let key = raw_key.trim();
        let value = raw_value.trim();
        if key.is_empty() {
            return Err(Error::MalformedLine {
                path: path.to_path_buf(),
                line,
                text: content.to_string(),
            });
        }
        if !seen.insert(key.to_string()) {
            return Err(Error::DuplicateKey {
                path: path.to_path_buf(),
                line,
                key: key.to_string(),
            });
        }

        let site = KeySite { path, line, key };
        match key {
            "problem" => {
                if !PROBLEM_TAGS.contains(&value) {
                    return Err(site.bad(format!(
                        "unknown problem `{value}`; valid problems are {}",
                        PROBLEM_TAGS.join(", ")
                    )));
                }
                problem = Some(value.to_string());
            }
            "dims" => {
                let parsed: Vec<usize> = site
                    .list(value)?
                    .into_iter()
                    .map(|item| site.positive_int(item))
                    .collect::<Result<_>>()?;
                dims = Some(parsed);
            }
            "thetas" => {
                let parsed: Vec<f64> = site
                    .list(value)?
                    .into_iter()
                    .map(|item| site.positive_f64(item))
                    .collect::<Result<_>>()?;
                thetas = Some(parsed);
            }
            "algorithms" => {
                let items = site.list(value)?;
                let mut tags = Vec::with_capacity(items.len());
                for item in items {
                    if !ALGORITHM_TAGS.contains(&item) {
                        return Err(site.bad(format!(
                            "unknown algorithm `{item}`; valid tags are {}",
                            ALGORITHM_TAGS.join(", ")
                        )));
                    }
                    if tags.iter().any(|t| t == item) {
                        return Err(site.bad(format!("algorithm `{item}` listed twice")));
                    }
                    tags.push(item.to_string());
                }
                algorithms = Some(tags);
            }
            "tolerance" => tolerance = Some(site.positive_f64(value)?),
            "max_iter" => max_iter = Some(site.positive_int::<u64>(value)?),
            "repeats" => repeats = Some(site.positive_int::<u32>(value)?),
            "output_dir" => output_dir = Some(PathBuf::from(value)),
            _ => {
                let mut parts = key.splitn(3, '.');
                let is_alg_key = parts.next() == Some("alg");
                let tag = parts.next().unwrap_or("");
                let param = parts.next().unwrap_or("");
                if !is_alg_key || param.is_empty() {
                    return Err(Error::UnknownKey {
                        path: path.to_path_buf(),
                        line,
                        key: key.to_string(),
                    });
                }
                if !ALGORITHM_TAGS.contains(&tag) {
                    return Err(site.bad(format!(
                        "unknown algorithm `{tag}`; valid tags are {}",
                        ALGORITHM_TAGS.join(", ")
                    )));
                }
                let number = site.f64(value)?;
                match (tag, param) {
                    ("tseng-adaptive", "mu") => adaptive.mu = number,
                    ("tseng-adaptive", "lambda1") => adaptive.lambda1 = number,
                    ("tseng-adaptive", "xi_exponent") => {
                        adaptive.xi = XiSchedule::PowerLaw { exponent: number }
                    }
                    ("tseng-linesearch", "gamma") => linesearch.gamma = number,
                    ("tseng-linesearch", "l") => linesearch.l = number,
                    ("tseng-linesearch", "mu") => linesearch.mu = number,
                    ("iusem", "gamma") => iusem.gamma = number,
                    ("iusem", "l") => iusem.l = number,
                    ("iusem", "mu") => iusem.mu = number,
                    ("tseng-fixed", "lambda") => fixed.lambda = number,
                    ("subgrad-extragrad", "lambda") => subgrad.lambda = number,
                    _ => {
                        return Err(Error::UnknownKey {
                            path: path.to_path_buf(),
                            line,
                            key: key.to_string(),
                        })
                    }
                }
            }
        }
    }

    let spec = BenchmarkSpec {
        problem: problem.ok_or(Error::MissingKey { key: "problem" })?,
        dims: dims.ok_or(Error::MissingKey { key: "dims" })?,
        thetas: thetas.ok_or(Error::MissingKey { key: "thetas" })?,
        algorithms: algorithms.ok_or(Error::MissingKey { key: "algorithms" })?,
        tolerance: tolerance.unwrap_or(1e-8),
        max_iter: max_iter.unwrap_or(5000),
        repeats: repeats.unwrap_or(20),
        output_dir,
        adaptive,
        linesearch,
        iusem,
        fixed,
        subgrad,
    };
    // Parameter ranges are checked for every block, including blocks whose
    // algorithm is not scheduled, so a typo cannot hide in an unused block.
    for tag in ALGORITHM_TAGS {
        spec.method_for(tag)?.validate()?;
    }
    Ok(spec)
}
