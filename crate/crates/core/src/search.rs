//! Deterministic parameter sweeps with append-only JSON-lines persistence.
//!
//! A job enumerates a finite grid of parameter points, runs one pipeline per point
//! and produces exactly one [`ResultRecord`] per point, in grid order. Points are
//! evaluated in parallel chunks and appended chunk by chunk, so an interrupted run
//! leaves a prefix of the final file and can be resumed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{Branch, CurveSetup};
use crate::error::{Error, Result};
use crate::param::{self, TripleParams};
use crate::rational::Rational;
use crate::record::Tag;
use crate::tuple::{classify_structure, DioTuple, StructureProfile};

/// Rationals `n/d` in lowest terms with `|n| ≤ num_bound` and `1 ≤ d ≤ den_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub num_bound: u64,
    pub den_bound: u64,
    pub exclude_zero: bool,
}

impl GridSpec {
    /// Height at most `bound`, zero excluded.
    pub fn height(bound: u64) -> Self {
        GridSpec {
            num_bound: bound,
            den_bound: bound,
            exclude_zero: true,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Grid points ordered by denominator, then numerator.
pub fn enumerate_grid(spec: &GridSpec) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let n = spec.num_bound as i128;
    for d in 1..=spec.den_bound {
        for num in -n..=n {
            if num == 0 && (spec.exclude_zero || d != 1) {
                continue;
            }
            if num != 0 && gcd(num.unsigned_abs() as u64, d) != 1 {
                continue;
            }
            out.push(Rational::new(num, d));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    /// The one-parameter sextuple family at each `u`.
    Family,
    /// `m·P1 + n·P2` on the curve at each `u`, for `|m|, |n| ≤ combo_bound`.
    Curve,
    /// Lasić triples over a cube of `(t1, t2, t3)` and their regular extensions.
    Triple,
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "family" => Ok(Pipeline::Family),
            "curve" => Ok(Pipeline::Curve),
            "triple" => Ok(Pipeline::Triple),
            other => Err(Error::InvalidJob(format!("unknown pipeline {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchJob {
    pub job_id: String,
    pub grid: GridSpec,
    pub pipeline: Pipeline,
    pub combo_bound: u32,
    /// Records whose tuple height exceeds this are left out of [`census_structures`].
    pub height_bound: Option<BigUint>,
}

impl SearchJob {
    pub fn new(job_id: impl Into<String>, pipeline: Pipeline, grid: GridSpec) -> Self {
        SearchJob {
            job_id: job_id.into(),
            grid,
            pipeline,
            combo_bound: 2,
            height_bound: None,
        }
    }

    /// Parses a `key = value` file. Keys: `job_id`, `pipeline`, `bound` (sets both
    /// grid bounds), `num_bound`, `den_bound`, `exclude_zero`, `combo_bound`,
    /// `height_bound`. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut job = SearchJob::new("job", Pipeline::Family, GridSpec::height(1));
        let mut seen_grid = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidJob(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Error::InvalidJob(format!("line {}: invalid {what} {value:?}", lineno + 1))
            };
            let int = |what: &str| value.parse::<u64>().map_err(|_| bad(what));
            match key {
                "job_id" => job.job_id = value.to_string(),
                "pipeline" => job.pipeline = value.parse()?,
                "bound" => {
                    let b = int(key)?;
                    job.grid.num_bound = b;
                    job.grid.den_bound = b;
                    seen_grid = true;
                }
                "num_bound" => {
                    job.grid.num_bound = int(key)?;
                    seen_grid = true;
                }
                "den_bound" => {
                    job.grid.den_bound = int(key)?;
                    seen_grid = true;
                }
                "exclude_zero" => job.grid.exclude_zero = value.parse().map_err(|_| bad(key))?,
                "combo_bound" => job.combo_bound = value.parse().map_err(|_| bad(key))?,
                "height_bound" => job.height_bound = Some(value.parse().map_err(|_| bad(key))?),
                other => {
                    return Err(Error::InvalidJob(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        if !seen_grid {
            return Err(Error::InvalidJob("no grid bound given".into()));
        }
        Ok(job)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn combos(&self) -> Vec<(i64, i64)> {
        let b = i64::from(self.combo_bound);
        (-b..=b)
            .flat_map(|m| (-b..=b).map(move |n| (m, n)))
            .collect()
    }

    /// Number of grid points (and hence of records).
    pub fn cardinality(&self) -> Result<usize> {
        let axis = enumerate_grid(&self.grid)?.len();
        Ok(match self.pipeline {
            Pipeline::Family => axis,
            Pipeline::Curve => axis * self.combos().len(),
            Pipeline::Triple => axis * axis * axis,
        })
    }
}

/// The parameter point a record was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pipeline", rename_all = "snake_case")]
pub enum SearchParams {
    Family {
        u: Rational,
    },
    Curve {
        u: Rational,
        m: i64,
        n: i64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        branch: Option<Branch>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        t1: Option<Rational>,
    },
    Triple {
        t1: Rational,
        t2: Rational,
        t3: Rational,
    },
}

mod height_text {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(h: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match h {
            Some(h) => s.serialize_str(&h.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub job_id: String,
    pub grid_index: usize,
    pub params: SearchParams,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<StructureProfile>,
    #[serde(with = "height_text", skip_serializing_if = "Option::is_none", default)]
    pub height: Option<BigUint>,
}

impl ResultRecord {
    fn degenerate(
        job: &SearchJob,
        grid_index: usize,
        params: SearchParams,
        reason: String,
    ) -> Self {
        ResultRecord {
            job_id: job.job_id.clone(),
            grid_index,
            params,
            tag: Tag::Degenerate,
            reason: Some(reason),
            elements: None,
            profile: None,
            height: None,
        }
    }

    fn from_elements(
        job: &SearchJob,
        grid_index: usize,
        params: SearchParams,
        values: &[Rational],
    ) -> Self {
        let height = values.iter().map(Rational::height).max();
        match DioTuple::new(values) {
            Ok(t) if t.is_diophantine() => ResultRecord {
                job_id: job.job_id.clone(),
                grid_index,
                params,
                tag: Tag::Valid,
                reason: None,
                elements: Some(values.to_vec()),
                profile: Some(classify_structure(&t)),
                height,
            },
            Ok(_) => ResultRecord {
                tag: Tag::NotSextuple,
                reason: Some("pairwise condition fails".into()),
                elements: Some(values.to_vec()),
                height,
                ..Self::degenerate(job, grid_index, params, String::new())
            },
            Err(e) => Self::degenerate(job, grid_index, params, e.to_string()),
        }
    }

    /// Recomputes the verification status from the stored elements.
    pub fn reverify(&self) -> bool {
        let verified = self
            .elements
            .as_deref()
            .and_then(|v| DioTuple::new(v).ok())
            .map(|t| t.is_diophantine() && Some(t.height()) == self.height);
        match self.tag {
            Tag::Valid => verified == Some(true),
            Tag::NotSextuple => verified == Some(false),
            Tag::Degenerate => true,
        }
    }

    pub fn within_height(&self, bound: Option<&BigUint>) -> bool {
        match (bound, &self.height) {
            (None, _) => true,
            (Some(b), Some(h)) => h <= b,
            (Some(_), None) => false,
        }
    }
}

fn family_point(job: &SearchJob, index: usize, u: &Rational) -> ResultRecord {
    let params = SearchParams::Family { u: u.clone() };
    match param::sextuple_of_u(u) {
        Ok(values) => ResultRecord::from_elements(job, index, params, &values),
        Err(e) => ResultRecord::degenerate(job, index, params, e.to_string()),
    }
}

fn curve_records(
    job: &SearchJob,
    first_index: usize,
    u: &Rational,
    combos: &[(i64, i64)],
) -> Vec<ResultRecord> {
    let setup = match CurveSetup::new(u) {
        Ok(s) => s,
        Err(e) => {
            return combos
                .iter()
                .enumerate()
                .map(|(k, &(m, n))| {
                    let params = SearchParams::Curve {
                        u: u.clone(),
                        m,
                        n,
                        branch: None,
                        t1: None,
                    };
                    ResultRecord::degenerate(job, first_index + k, params, e.to_string())
                })
                .collect()
        }
    };
    combos
        .iter()
        .enumerate()
        .map(|(k, &(m, n))| {
            let points = Branch::BOTH.map(|br| (br, setup.combination(m, n, br)));
            let candidates: Vec<_> = points
                .into_iter()
                .map(|(br, p)| (br, setup.curve.t_of(&p)))
                .collect();
            curve_point_record(job, first_index + k, u, m, n, &candidates)
        })
        .collect()
}

fn curve_point_record(
    job: &SearchJob,
    index: usize,
    u: &Rational,
    m: i64,
    n: i64,
    candidates: &[(Branch, Option<Rational>)],
) -> ResultRecord {
    let mut fallback = None;
    for (branch, t1) in candidates {
        let Some(t1) = t1 else { continue };
        let params = SearchParams::Curve {
            u: u.clone(),
            m,
            n,
            branch: Some(*branch),
            t1: Some(t1.clone()),
        };
        let record = match param::sextuple_from(&param::FamilyParams::new(u.clone(), t1.clone())) {
            Ok(values) => ResultRecord::from_elements(job, index, params, &values),
            Err(e) => ResultRecord::degenerate(job, index, params, e.to_string()),
        };
        if record.tag != Tag::Degenerate {
            return record;
        }
        fallback.get_or_insert(record);
    }
    fallback.unwrap_or_else(|| {
        let params = SearchParams::Curve {
            u: u.clone(),
            m,
            n,
            branch: None,
            t1: None,
        };
        ResultRecord::degenerate(job, index, params, "no affine point on the quartic".into())
    })
}

fn triple_point(job: &SearchJob, index: usize, p: TripleParams) -> ResultRecord {
    let params = SearchParams::Triple {
        t1: p.t1.clone(),
        t2: p.t2.clone(),
        t3: p.t3.clone(),
    };
    let triple = match param::lasic_triple(&p) {
        Ok(t) => t,
        Err(e) => return ResultRecord::degenerate(job, index, params, e.to_string()),
    };
    let [a4, a5] = match param::regular_pair_from_params(&p) {
        Ok(pair) => pair,
        Err(e) => return ResultRecord::degenerate(job, index, params, e.to_string()),
    };
    let [a1, a2, a3] = triple;
    let quintuple = [a1.clone(), a2.clone(), a3.clone(), a4.clone(), a5.clone()];
    if DioTuple::new(&quintuple).is_ok_and(|t| t.is_diophantine()) {
        return ResultRecord::from_elements(job, index, params, &quintuple);
    }
    // a4·a5 + 1 is not a square: fall back to a regular quadruple
    for a in [a4, a5] {
        let quad = [a1.clone(), a2.clone(), a3.clone(), a];
        if DioTuple::new(&quad).is_ok_and(|t| t.is_diophantine()) {
            let mut r = ResultRecord::from_elements(job, index, params, &quad);
            r.reason = Some("a4*a5 + 1 is not a square".into());
            return r;
        }
    }
    ResultRecord::degenerate(
        job,
        index,
        params,
        "regular extension is zero or repeats an element".into(),
    )
}

/// Records for grid indices in `range`, in index order.
pub fn evaluate_range(job: &SearchJob, range: std::ops::Range<usize>) -> Result<Vec<ResultRecord>> {
    let axis = enumerate_grid(&job.grid)?;
    let out = match job.pipeline {
        Pipeline::Family => range
            .into_par_iter()
            .map(|i| family_point(job, i, &axis[i]))
            .collect(),
        Pipeline::Triple => {
            let a = axis.len();
            range
                .into_par_iter()
                .map(|i| {
                    let p = TripleParams::new(
                        axis[i / (a * a)].clone(),
                        axis[i / a % a].clone(),
                        axis[i % a].clone(),
                    );
                    triple_point(job, i, p)
                })
                .collect()
        }
        Pipeline::Curve => {
            let combos = job.combos();
            let c = combos.len();
            let (start, end) = (range.start, range.end);
            let groups: Vec<usize> = (start / c..end.div_ceil(c)).collect();
            let nested: Vec<Vec<ResultRecord>> = groups
                .par_iter()
                .map(|&ui| {
                    let lo = (ui * c).max(start);
                    let hi = ((ui + 1) * c).min(end);
                    curve_records(job, lo, &axis[ui], &combos[lo - ui * c..hi - ui * c])
                })
                .collect();
            nested.into_iter().flatten().collect()
        }
    };
    Ok(out)
}

/// All records of a job, in grid order.
pub fn run_job(job: &SearchJob) -> Result<Vec<ResultRecord>> {
    evaluate_range(job, 0..job.cardinality()?)
}

/// Family sweep over the job's `u` grid.
pub fn run_family_sweep(job: &SearchJob) -> Result<Vec<ResultRecord>> {
    run_job(&SearchJob {
        pipeline: Pipeline::Family,
        ..job.clone()
    })
}

/// Histogram of `(regular quadruples, regular quintuples)` over VALID records.
pub fn census_structures<'a>(
    records: impl IntoIterator<Item = &'a ResultRecord>,
) -> BTreeMap<(usize, usize), usize> {
    let mut hist = BTreeMap::new();
    for r in records {
        if let (Tag::Valid, Some(p)) = (r.tag, &r.profile) {
            *hist.entry(p.signature()).or_insert(0) += 1;
        }
    }
    hist
}

pub fn to_line(record: &ResultRecord) -> String {
    serde_json::to_string(record).expect("records serialize")
}

/// Parses a record file. A final line without a terminating newline is treated as
/// an interrupted write and ignored; any other malformed line is an error.
pub fn parse_records(text: &str) -> Result<Vec<ResultRecord>> {
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    complete
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Io(format!("record line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn load_records(path: &Path) -> Result<Vec<ResultRecord>> {
    match fs::read_to_string(path) {
        Ok(text) => parse_records(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

/// Single writer appending one record per line.
pub struct RecordAppender {
    out: BufWriter<File>,
}

impl RecordAppender {
    /// Opens `path` for appending, first cutting off any partial trailing line.
    pub fn open(path: &Path) -> Result<Self> {
        if let Ok(text) = fs::read(path) {
            let keep = text.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
            if keep != text.len() {
                OpenOptions::new()
                    .write(true)
                    .open(path)?
                    .set_len(keep as u64)?;
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(RecordAppender {
            out: BufWriter::new(file),
        })
    }

    pub fn append(&mut self, records: &[ResultRecord]) -> Result<()> {
        for r in records {
            writeln!(self.out, "{}", to_line(r))?;
        }
        self.out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub total: usize,
    pub skipped: usize,
    pub written: usize,
}

const CHUNK: usize = 64;

/// Runs a job into a record file, skipping grid indices this job already completed.
pub fn run_job_to_file(job: &SearchJob, path: &Path) -> Result<RunSummary> {
    let total = job.cardinality()?;
    let done: BTreeSet<usize> = load_records(path)?
        .into_iter()
        .filter(|r| r.job_id == job.job_id)
        .map(|r| r.grid_index)
        .collect();
    let mut appender = RecordAppender::open(path)?;
    let todo: Vec<usize> = (0..total).filter(|i| !done.contains(i)).collect();
    let mut written = 0;
    for chunk in todo
        .chunk_by(|a, b| b == &(a + 1))
        .flat_map(|run| run.chunks(CHUNK))
    {
        let records = evaluate_range(job, chunk[0]..chunk[chunk.len() - 1] + 1)?;
        appender.append(&records)?;
        written += records.len();
    }
    Ok(RunSummary {
        total,
        skipped: total - todo.len(),
        written,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn grid_bound_two() {
        let g = enumerate_grid(&GridSpec::height(2)).unwrap();
        assert_eq!(
            g,
            vec![q(-2, 1), q(-1, 1), q(1, 1), q(2, 1), q(-1, 2), q(1, 2)]
        );
        let g = enumerate_grid(&GridSpec::height(1)).unwrap();
        assert_eq!(g, vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn grid_is_reduced() {
        let g = enumerate_grid(&GridSpec::height(12)).unwrap();
        let set: BTreeSet<_> = g.iter().cloned().collect();
        assert_eq!(set.len(), g.len());
        let with_zero = GridSpec {
            exclude_zero: false,
            ..GridSpec::height(1)
        };
        assert_eq!(
            enumerate_grid(&with_zero).unwrap(),
            vec![q(-1, 1), q(0, 1), q(1, 1)]
        );
        let empty = GridSpec {
            num_bound: 0,
            den_bound: 3,
            exclude_zero: true,
        };
        assert_eq!(enumerate_grid(&empty), Err(Error::EmptyGrid));
    }

    #[test]
    fn job_file_parsing() {
        let job = SearchJob::parse("# sweep\njob_id = a\npipeline = curve\nbound = 3\ncombo_bound = 1\nheight_bound = 1000\n")
            .unwrap();
        assert_eq!(job.pipeline, Pipeline::Curve);
        assert_eq!(job.grid, GridSpec::height(3));
        assert_eq!(job.combo_bound, 1);
        assert_eq!(job.height_bound, Some(BigUint::from(1000u32)));
        assert!(matches!(
            SearchJob::parse("bound = 2\ncolour = red\n"),
            Err(Error::InvalidJob(_))
        ));
        assert!(matches!(
            SearchJob::parse("pipeline = family\n"),
            Err(Error::InvalidJob(_))
        ));
    }

    #[test]
    fn partial_trailing_line_is_ignored() {
        let job = SearchJob::new("t", Pipeline::Family, GridSpec::height(1));
        let records = run_job(&job).unwrap();
        let mut text: String = records.iter().map(|r| to_line(r) + "\n").collect();
        text.push_str("{\"job_id\":\"t\",\"grid_");
        assert_eq!(parse_records(&text).unwrap(), records);
    }
}
