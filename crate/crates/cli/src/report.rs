//! The `analyze` report: everything the criteria looked at, their verdicts
//! and the final answer, as one JSON document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use logarr::arrangement::{intersection_lattice, is_pencil, Arrangement, ArrangementDoc, MultiplicityProfile};
use logarr::criteria::{decide, CriterionReport, DecideOptions, Disagreement};
use logarr::invariants::{c2_from_profile, exponent_candidates, hirzebruch_check, t_from_lattice, HirzebruchCheck};
use logarr::oracle::SyzygySystem;
use logarr::splitting::SamplingParams;
use logarr::{Criterion, Error, ExponentPair, FreenessResult, Result, Status};

pub const SCHEMA: &str = "logarr/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub trials: usize,
    pub verify: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        let s = SamplingParams::default();
        AnalyzeOptions {
            seed: s.seed,
            trials: s.trials,
            verify: true,
        }
    }
}

impl AnalyzeOptions {
    pub fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            verify: self.verify,
            sampling: SamplingParams {
                trials: self.trials,
                seed: self.seed,
                ..SamplingParams::default()
            },
            ..DecideOptions::default()
        }
    }
}

/// Wall-clock milliseconds. The only part of a report that is not a
/// function of the input and the seed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub invariants_ms: f64,
    pub decide_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub input: ArrangementDoc,
    pub field: String,
    pub m: usize,
    /// Number of intersection points of each multiplicity.
    pub profile: BTreeMap<usize, usize>,
    pub pencil: bool,
    pub c2: i64,
    pub exponent_candidates: Vec<ExponentPair>,
    /// `t` of every line: the multiple points on it, counted with
    /// multiplicity minus two.
    pub t_values: Vec<usize>,
    pub secant_max: usize,
    pub hirzebruch: HirzebruchCheck,
    /// Every criterion consulted, in pipeline order, the oracle last.
    pub criteria: Vec<CriterionReport>,
    pub deletion_inconsistencies: Vec<usize>,
    pub disagreements: Vec<Disagreement>,
    /// `h^0(T_Z(t))` for `t = 0..=a*` when the oracle ran.
    pub oracle_dims: Option<Vec<usize>>,
    pub decided_by: Criterion,
    pub result: FreenessResult,
    pub seed: u64,
    pub trials: usize,
    pub verify: bool,
    pub timings: Timings,
}

impl Report {
    pub fn status(&self) -> Status {
        self.result.status
    }

    pub fn criterion(&self, c: Criterion) -> Option<&CriterionReport> {
        self.criteria.iter().find(|r| r.criterion == c)
    }

    /// The report without its timings, for reproducibility checks.
    pub fn without_timings(&self) -> Report {
        Report {
            timings: Timings::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let profile: Vec<String> = self.profile.iter().map(|(h, b)| format!("{h}:{b}")).collect();
        let _ = writeln!(s, "lines        {} over {}", self.m, self.field);
        let _ = writeln!(s, "profile      {}", profile.join(" "));
        let cands: Vec<String> = self.exponent_candidates.iter().map(ToString::to_string).collect();
        let cands = if cands.is_empty() { "none".to_string() } else { cands.join(" ") };
        let _ = writeln!(s, "c2           {}  (exponent candidates: {cands})", self.c2);
        let ts: Vec<String> = self.t_values.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "t values     {}", ts.join(" "));
        let _ = writeln!(s, "secant max   {}", self.secant_max);
        let h = &self.hirzebruch;
        let hz = if h.applicable {
            let verdict = if h.holds { "holds" } else { "FAILS" };
            format!("{} >= {} {verdict}", h.lhs_times_4, h.rhs_times_4)
        } else {
            "not applicable".to_string()
        };
        let _ = writeln!(s, "hirzebruch   {hz}");
        if let Some(dims) = &self.oracle_dims {
            let d: Vec<String> = dims.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "h0(T_Z(t))   {}", d.join(" "));
        }
        let _ = writeln!(s, "criteria");
        for r in &self.criteria {
            let prob = if r.outcome.certificate.probabilistic { " [probabilistic]" } else { "" };
            let _ = writeln!(
                s,
                "  {:<12} {:<12} {}{prob}",
                r.criterion.name(),
                r.outcome.status.to_string(),
                r.outcome.certificate.detail
            );
        }
        for d in &self.disagreements {
            let _ = writeln!(s, "DISAGREEMENT {}: claimed {}, oracle {}", d.criterion.name(), d.claimed, d.oracle);
        }
        let _ = writeln!(s, "result       {} (decided by {})", self.result.status, self.decided_by.name());
        s
    }
}

pub fn analyze(a: &Arrangement, opts: &AnalyzeOptions) -> Result<Report> {
    let start = Instant::now();
    let lattice = intersection_lattice(a);
    let profile = MultiplicityProfile::from_lattice(a.m(), &lattice);
    let pencil = is_pencil(a);
    let c2 = c2_from_profile(&profile, pencil).c2;
    let t_values: Vec<usize> = (0..a.m()).map(|i| t_from_lattice(&lattice, i)).collect();
    let secant_max = profile.max_multiplicity();
    let invariants_ms = ms(start);

    let t = Instant::now();
    let decision = decide(a, &opts.decide_options())?;
    let oracle_dims = match decision.oracle() {
        Some(o) => Some(dims_up_to_a_star(a, o)?),
        None => None,
    };
    let decide_ms = ms(t);

    Ok(Report {
        schema: SCHEMA.to_string(),
        input: a.to_doc(),
        field: a.field().to_string(),
        m: a.m(),
        profile: profile.counts.clone(),
        pencil,
        c2,
        exponent_candidates: exponent_candidates(a.m(), c2),
        t_values,
        secant_max,
        hirzebruch: hirzebruch_check(&profile),
        criteria: decision.reports,
        deletion_inconsistencies: decision.deletion_inconsistencies,
        disagreements: decision.disagreements,
        oracle_dims,
        decided_by: decision.decided_by,
        result: decision.result,
        seed: opts.seed,
        trials: opts.trials,
        verify: opts.verify,
        timings: Timings {
            invariants_ms,
            decide_ms,
            total_ms: ms(start),
        },
    })
}

fn dims_up_to_a_star(a: &Arrangement, oracle: &FreenessResult) -> Result<Vec<usize>> {
    let a_star = oracle.certificate.witness["a_star"]
        .as_u64()
        .ok_or_else(|| Error::InternalBoundExceeded("oracle certificate without a_star".into()))?;
    let sys = SyzygySystem::new(a);
    Ok((0..=a_star as usize).map(|t| sys.h0(t, Default::default())).collect())
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}
