//! Exhaustive check of the extremal theorem at small size, plus the two
//! structural lemmas about maximizers.
//!
//! A report compares the brute-force maximizers of `q` over graphs with `m`
//! edges and matching number exactly `beta` against the predicted graph.
//! Isolated vertices are ignored throughout: they change neither `m`, `beta`
//! nor `q`, so every statement holds "up to isolated vertices".

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::family::{extremal_params, FamilyError, FamilyParams};
use crate::graph::{is_isomorphic, Graph};
use crate::matching::{
    extremal_matching, proper_ordering, Matching, MatchingError, OrderedMatching,
};
use crate::search::{
    brute_force_max_in, predicted_maximizers, Catalog, EnumerationQuery, SearchConfig, SearchError,
};
use crate::spectral::{q_radius, SpectralData};

/// Agreement required between the brute-force and predicted maxima.
pub const Q_AGREEMENT: f64 = 1e-8;

/// Eigenvector entries closer than this are treated as tied.
pub const LEMMA_MARGIN: f64 = 1e-10;

pub const CSV_HEADER: &str =
    "query,m,beta,classes,qmax,verdict,argmax,predicted,params,q_predicted,lemma2_ok,lemma3_ok";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("no graph has {m} edges and matching number {beta}")]
    Infeasible { m: usize, beta: usize },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Infeasible => "infeasible",
        }
    }
}

/// Rounds to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

fn ser_round_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&round12(*v)),
        None => s.serialize_none(),
    }
}

/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub beta: usize,
    /// Isomorphism classes without isolated vertices.
    pub classes: usize,
    #[serde(serialize_with = "ser_round_opt")]
    pub qmax: Option<f64>,
    /// Canonical maximizers, sorted.
    pub argmax: Vec<Graph>,
    pub predicted: Vec<Graph>,
    /// `None` when `beta = 1`, where the maximizers are stars (and `K_3`).
    pub params: Option<FamilyParams>,
    #[serde(serialize_with = "ser_round_opt")]
    pub q_predicted: Option<f64>,
    pub verdict: Verdict,
    pub lemma2_ok: bool,
    pub lemma3_ok: bool,
    pub notes: Vec<String>,
    /// Wall-clock time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn infeasible(m: usize, beta: usize) -> Self {
        Self {
            m,
            beta,
            classes: 0,
            qmax: None,
            argmax: Vec::new(),
            predicted: Vec::new(),
            params: None,
            q_predicted: None,
            verdict: Verdict::Infeasible,
            lemma2_ok: false,
            lemma3_ok: false,
            notes: vec![format!("no graph has {m} edges and matching number {beta}")],
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Outcome of a lemma check on one graph.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub ok: bool,
    pub violations: Vec<String>,
    /// Comparisons that fell inside [`LEMMA_MARGIN`] and could not be decided.
    pub indeterminate: Vec<String>,
}

impl LemmaCheck {
    fn from_parts(violations: Vec<String>, indeterminate: Vec<String>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
            indeterminate,
        }
    }
}

/// Every vertex missed by the extremal matching has an entry no larger than
/// the smallest matched entry.
pub fn check_lemma2(g: &Graph, s: &SpectralData, matching: &Matching) -> LemmaCheck {
    let x = &s.x;
    let covered = matching.covered_mask();
    let floor = (0..g.n())
        .filter(|&v| covered >> v & 1 == 1)
        .map(|v| x[v])
        .fold(f64::INFINITY, f64::min);
    let violations = (0..g.n())
        .filter(|&w| covered >> w & 1 == 0 && g.degree(w) > 0)
        .filter(|&w| x[w] > floor + LEMMA_MARGIN)
        .map(|w| {
            format!(
                "unmatched vertex {w}: x = {:.12} above matched minimum {floor:.12}",
                x[w]
            )
        })
        .collect();
    LemmaCheck::from_parts(violations, Vec::new())
}

fn is_two_edges_or_k4(h: &Graph) -> bool {
    match h.m() {
        2 => (0..4).all(|v| h.degree(v) == 1),
        6 => true,
        _ => false,
    }
}

/// For `i < j` in a proper ordering: `x_{u_i} >= x_{v_j}` exactly when
/// `{u_i, v_i, u_j, v_j}` induces `2K_2` or `K_4`. A tie within the margin
/// agrees with either induced graph on the `>=` side, otherwise it is
/// reported as indeterminate.
pub fn check_lemma3(g: &Graph, s: &SpectralData, om: &OrderedMatching) -> LemmaCheck {
    let x = &s.x;
    let pairs = om.pairs();
    let mut violations = Vec::new();
    let mut indeterminate = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ((ui, vi), (uj, vj)) = (pairs[i], pairs[j]);
            let h = g
                .induced_subgraph(&[ui, vi, uj, vj])
                .expect("distinct matched vertices");
            let special = is_two_edges_or_k4(&h);
            let diff = x[ui] - x[vj];
            let label = format!("pairs {i},{j} (u={ui}, v={vj})");
            if diff.abs() <= LEMMA_MARGIN {
                if !special {
                    indeterminate.push(format!(
                        "{label}: entries tie, induced graph has {} edges",
                        h.m()
                    ));
                }
            } else if (diff > 0.0) != special {
                violations.push(format!(
                    "{label}: x_u - x_v = {diff:.3e} but induced graph {} 2K2/K4",
                    if special { "is" } else { "is not" }
                ));
            }
        }
    }
    LemmaCheck::from_parts(violations, indeterminate)
}

/// Runs queries against one shared catalog of connected graphs.
#[derive(Debug, Clone)]
pub struct Verifier {
    catalog: Catalog,
}

impl Verifier {
    /// Catalog large enough for every `m <= max_edges`.
    pub fn new(max_edges: usize, workers: Option<usize>) -> Result<Self, VerifyError> {
        Ok(Self {
            catalog: Catalog::build(max_edges, workers)?,
        })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn verify(&self, m: usize, beta: usize) -> Result<VerificationReport, VerifyError> {
        let started = Instant::now();
        if m < beta {
            return Err(VerifyError::Infeasible { m, beta });
        }
        let query = EnumerationQuery::exact(m, beta);
        let max = brute_force_max_in(&self.catalog, &query)?;
        let predicted = predicted_maximizers(m, beta)?;
        let params = if beta >= 2 {
            Some(extremal_params(m, beta)?)
        } else {
            None
        };
        let q_predicted = predicted.iter().map(|g| q_radius(g).q).fold(0.0, f64::max);

        let mut notes = vec!["graphs are listed without isolated vertices".to_string()];
        let same_set = max.argmax.len() == predicted.len()
            && predicted
                .iter()
                .all(|p| max.argmax.iter().any(|a| is_isomorphic(a, &p.normalize())));
        let q_agrees = (max.qmax - q_predicted).abs() <= Q_AGREEMENT;
        if !same_set {
            notes.push(format!(
                "{} maximizer(s) found, {} predicted; sets differ",
                max.argmax.len(),
                predicted.len()
            ));
        }
        if !q_agrees {
            notes.push(format!(
                "qmax {} differs from predicted {}",
                max.qmax, q_predicted
            ));
        }

        let mut lemma2_ok = true;
        let mut lemma3_ok = true;
        for g in &max.argmax {
            let s = q_radius(g);
            let matching = extremal_matching(g, &s.x)?;
            let om = proper_ordering(&matching, &s.x);
            let l2 = check_lemma2(g, &s, &matching);
            let l3 = check_lemma3(g, &s, &om);
            lemma2_ok &= l2.ok;
            lemma3_ok &= l3.ok;
            for v in l2.violations.iter().chain(&l3.violations) {
                notes.push(format!("{g}: {v}"));
            }
            for v in &l3.indeterminate {
                notes.push(format!("{g}: indeterminate {v}"));
            }
        }

        let verdict = if same_set && q_agrees {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Ok(VerificationReport {
            m,
            beta,
            classes: max.classes,
            qmax: Some(max.qmax),
            argmax: max.argmax,
            predicted: predicted.iter().map(Graph::normalize).collect(),
            params,
            q_predicted: Some(q_predicted),
            verdict,
            lemma2_ok,
            lemma3_ok,
            notes,
            elapsed: started.elapsed(),
        })
    }
}

/// Brute-force maximizers of `(m, beta)` against the predicted graph.
pub fn verify_theorem1(
    m: usize,
    beta: usize,
    config: &SearchConfig,
) -> Result<VerificationReport, VerifyError> {
    if m < beta {
        return Err(VerifyError::Infeasible { m, beta });
    }
    if m > config.guard {
        return Err(SearchError::GuardExceeded {
            m,
            guard: config.guard,
        }
        .into());
    }
    Verifier::new(m, config.workers)?.verify(m, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub fn emit_report(r: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(r).expect("report serializes");
            text.push('\n');
            text
        }
        ReportFormat::Csv => {
            let mut text = String::from(CSV_HEADER);
            text.push('\n');
            text.push_str(&csv_row(r));
            text
        }
    }
}

/// One header line followed by a row per report.
pub fn emit_csv(reports: &[VerificationReport]) -> String {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in reports {
        text.push_str(&csv_row(r));
    }
    text
}

fn csv_row(r: &VerificationReport) -> String {
    // graph6 never contains ',' or ';', so no quoting is needed
    let join = |gs: &[Graph]| {
        gs.iter()
            .map(Graph::to_string)
            .collect::<Vec<_>>()
            .join(";")
    };
    let num = |v: Option<f64>| v.map(|v| round12(v).to_string()).unwrap_or_default();
    let params = r
        .params
        .map(|p| format!("{};{};{};{}", p.a, p.b, p.c, p.d))
        .unwrap_or_default();
    let mut row = String::new();
    writeln!(
        row,
        "{}:{},{},{},{},{},{},{},{},{},{},{},{}",
        r.m,
        r.beta,
        r.m,
        r.beta,
        r.classes,
        num(r.qmax),
        r.verdict.as_str(),
        join(&r.argmax),
        join(&r.predicted),
        params,
        num(r.q_predicted),
        r.lemma2_ok,
        r.lemma3_ok
    )
    .expect("writing to a String");
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_s;
    use crate::matching::all_maximum_matchings;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn small_theorem_instances() {
        let r = verify_theorem1(5, 2, &cfg()).unwrap();
        assert!(r.passed(), "{:?}", r.notes);
        assert!((r.qmax.unwrap() - 5.3234).abs() < 5e-4);
        assert!(is_isomorphic(&r.argmax[0], &build_s(2, 0, 1).unwrap()));
        assert!(r.lemma2_ok && r.lemma3_ok);

        let r = verify_theorem1(6, 3, &cfg()).unwrap();
        assert!(r.passed(), "{:?}", r.notes);
        assert!(is_isomorphic(&r.argmax[0], &build_s(1, 1, 1).unwrap()));
    }

    #[test]
    fn beta_one_has_two_maximizers_at_three_edges() {
        let r = verify_theorem1(3, 1, &cfg()).unwrap();
        assert!(r.passed());
        assert_eq!(r.argmax.len(), 2);
        assert!((r.qmax.unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(r.params, None);
    }

    #[test]
    fn infeasible_queries() {
        assert_eq!(
            verify_theorem1(2, 3, &cfg()).unwrap_err(),
            VerifyError::Infeasible { m: 2, beta: 3 }
        );
        let text = emit_report(&VerificationReport::infeasible(2, 3), ReportFormat::Json);
        assert!(text.contains("\"verdict\": \"infeasible\""));
    }

    #[test]
    fn lemma2_on_maximizers() {
        for g in [build_s(2, 0, 1).unwrap(), build_s(1, 1, 1).unwrap()] {
            let s = q_radius(&g);
            let m = extremal_matching(&g, &s.x).unwrap();
            assert!(check_lemma2(&g, &s, &m).ok);
        }
    }

    #[test]
    fn lemma3_cases() {
        // S_{2,0,1}: matching edge at the center against the triangle edge
        let g = build_s(2, 0, 1).unwrap();
        let s = q_radius(&g);
        let om = proper_ordering(&extremal_matching(&g, &s.x).unwrap(), &s.x);
        let check = check_lemma3(&g, &s, &om);
        assert!(check.ok && check.indeterminate.is_empty(), "{check:?}");
        let ((u1, _), (_, v2)) = (om.pairs()[0], om.pairs()[1]);
        assert!(s.x[u1] < s.x[v2]);

        // 3K2: every pair induces 2K2 and every entry ties or vanishes
        let g = Graph::matching_graph(3).unwrap();
        let s = q_radius(&g);
        let om = proper_ordering(&extremal_matching(&g, &s.x).unwrap(), &s.x);
        assert!(check_lemma3(&g, &s, &om).ok);

        let g = build_s(1, 0, 2).unwrap();
        let s = q_radius(&g);
        let om = proper_ordering(&extremal_matching(&g, &s.x).unwrap(), &s.x);
        assert!(check_lemma3(&g, &s, &om).ok);
    }

    #[test]
    fn lemma3_flags_a_non_maximizer() {
        // P5 with the matching {01, 23}: 0 and 3 fail the biconditional one way or the other
        let g = Graph::path(6).unwrap();
        let s = q_radius(&g);
        let found = all_maximum_matchings(&g)
            .unwrap()
            .iter()
            .map(|m| check_lemma3(&g, &s, &proper_ordering(m, &s.x)))
            .any(|c| !c.ok);
        assert!(found);
    }

    #[test]
    fn json_report_round_trips() {
        let r = verify_theorem1(5, 2, &cfg()).unwrap();
        let text = emit_report(&r, ReportFormat::Json);
        assert!(text.contains("\"verdict\": \"pass\""));
        assert!(text.contains("\"qmax\": 5.3234"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(emit_report(&back, ReportFormat::Json), text);
        // keys come out in declaration order
        let m = text.find("\"m\"").unwrap();
        let verdict = text.find("\"verdict\"").unwrap();
        assert!(m < verdict);
    }

    #[test]
    fn csv_layout() {
        let r = verify_theorem1(4, 2, &cfg()).unwrap();
        let text = emit_report(&r, ReportFormat::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), CSV_HEADER.split(',').count());
        assert_eq!(&row[..3], &["4:2", "4", "2"]);
        assert_eq!(row[5], "pass");
    }

    #[test]
    fn round12_keeps_twelve_digits() {
        assert_eq!(round12(5.323_404_276_123_456), 5.32340427612);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(4.0), 4.0);
    }

    #[test]
    fn reports_do_not_depend_on_workers() {
        let one = verify_theorem1(
            6,
            2,
            &SearchConfig {
                guard: 10,
                workers: Some(1),
            },
        )
        .unwrap();
        let many = verify_theorem1(
            6,
            2,
            &SearchConfig {
                guard: 10,
                workers: Some(3),
            },
        )
        .unwrap();
        assert_eq!(
            emit_report(&one, ReportFormat::Json),
            emit_report(&many, ReportFormat::Json)
        );
    }
}
