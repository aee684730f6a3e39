//! The acceptance sweep behind `gcg suite`.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use gcg::degeneration::{self, PlaneKind};
use gcg::families::{self, Part};
use gcg::gauss::{self, CorankCertificate, GaussError};
use gcg::numerology;
use gcg::planes::{self, LineNumbering, Span};
use gcg::{edge_connectivity, IntGaussianMatrix, TrivalentPlanarGraph};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const TIME_LIMIT: Duration = Duration::from_secs(300);
pub const SHUFFLE_GENERA: [usize; 4] = [7, 11, 12, 15];
pub const SHUFFLES: u64 = 20;

/// Known coranks of the standard graph curves.
pub fn expected_corank(g: usize) -> Option<usize> {
    match g {
        11 => Some(1),
        12 => Some(2),
        _ if g >= 13 => Some(1),
        _ => None,
    }
}

/// Softly expected values, reported but not enforced.
pub fn soft_corank(g: usize) -> Option<usize> {
    (g == 9).then_some(5)
}

/// The span table of the first chain in odd genus g = 2n+1, rows keyed by
/// 1-based vertex number.
pub fn first_chain_spans(n: usize) -> Vec<(usize, Span)> {
    let mut rows = vec![
        (1, Span::lines(1, 2 * n + 2)),
        (n + 1, Span::point_line(1, 2 * n + 1)),
    ];
    for i in 1..=n.saturating_sub(2) {
        rows.push((n + 2 * i, Span::point_line(i, 2 * n + 1 - i)));
        rows.push((n + 2 * i + 1, Span::point_line(2 * n - i, i + 1)));
    }
    rows.push((3 * n - 2, Span::point_line(n + 2, n)));
    rows.push((4 * n - 1, Span::lines(n + 1, n + 2)));
    rows
}

#[derive(Clone, Debug)]
pub struct Line {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub struct GenusRecord {
    pub genus: usize,
    pub valid: bool,
    pub connectivity: usize,
    pub certificate: CorankCertificate,
    pub hilbert_ok: bool,
    pub oracle_ok: Option<bool>,
    pub chains_ok: bool,
    pub degeneration: Result<String, String>,
    pub first_chain_spans: Option<Result<(), String>>,
    pub text: String,
}

#[derive(Debug)]
pub struct Report {
    pub lines: Vec<Line>,
    pub records: Vec<GenusRecord>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criteria": self.lines.iter().map(|l| json!({
                "detail": l.detail,
                "id": l.id,
                "notes": l.notes,
                "passed": l.passed,
                "title": l.title,
            })).collect::<Vec<_>>(),
            "genera": self.records.iter().map(|r| json!({
                "certificate": r.certificate,
                "connectivity": r.connectivity,
                "degeneration": match &r.degeneration { Ok(s) => json!({"ok": s}), Err(e) => json!({"error": e}) },
                "genus": r.genus,
                "hilbert_ok": r.hilbert_ok,
                "valid": r.valid,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
            "schema": gcg::SCHEMA,
        })
    }
}

#[derive(Debug)]
pub enum SuiteError {
    Invariant(String),
    Setup(String),
}

struct HilbertChecks {
    k3: bool,
    oracle: Option<bool>,
    chains: bool,
    table: Option<Result<(), String>>,
}

fn hilbert_checks(graph: &TrivalentPlanarGraph) -> Result<HilbertChecks, String> {
    let g = graph.genus() as u64;
    let s_g = planes::config_from_graph(graph).map_err(|e| e.to_string())?;
    let k3 = (1..=6u64).all(|d| planes::hilbert_function(&s_g, d) == (g - 1) * d * d + 2);
    let oracle = (g <= 9).then(|| {
        (1..=4usize).all(|d| {
            planes::hilbert_by_monomials(&s_g, d) == planes::hilbert_function(&s_g, d as u64)
        })
    });
    let decomp = families::ab_decomposition(graph.genus()).map_err(|e| e.to_string())?;
    let a = planes::chain_config(&s_g, &decomp, Part::A).map_err(|e| e.to_string())?;
    let b = planes::chain_config(&s_g, &decomp, Part::B).map_err(|e| e.to_string())?;
    let curve = planes::double_curve(&a, &b).map_err(|e| e.to_string())?;
    let scroll = |d: u64| ((g - 1) * d * d + (g + 1) * d + 2) / 2;
    let chains = (1..=6u64).all(|d| {
        planes::hilbert_function(&a, d) == scroll(d)
            && planes::hilbert_function(&b, d) == scroll(d)
            && planes::hilbert_function(&curve, d) == (g + 1) * d
    });
    let table = (g % 2 == 1).then(|| {
        let n = (graph.genus() - 1) / 2;
        let numbering = LineNumbering::for_chain(&curve, &a).map_err(|e| e.to_string())?;
        let labels: Vec<usize> = decomp.part_a.iter().map(|v| v + 1).collect();
        let table = planes::span_table(&a, &labels, &numbering).map_err(|e| e.to_string())?;
        let got: BTreeSet<(usize, Span)> = table.rows.iter().map(|r| (r.plane, r.span)).collect();
        let want: BTreeSet<(usize, Span)> = first_chain_spans(n).into_iter().collect();
        if got == want {
            Ok(())
        } else {
            Err(format!("span table differs: got {got:?}"))
        }
    });
    Ok(HilbertChecks {
        k3,
        oracle,
        chains,
        table,
    })
}

fn degeneration_check(graph: &TrivalentPlanarGraph) -> Result<String, String> {
    let g = graph.genus();
    let data = degeneration::standard_data(g).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for corr in [&data.a, &data.b] {
        let c = degeneration::is_compatible(&data.survivors, corr);
        if !c.compatible {
            let v: Vec<String> = c.violations.iter().map(|v| v.to_string()).collect();
            return Err(v.join("; "));
        }
        let chain = degeneration::limit_planes(&data.survivors, corr).map_err(|e| e.to_string())?;
        let alphas = chain
            .planes
            .iter()
            .filter(|p| p.kind == PlaneKind::Alpha)
            .count();
        if chain.planes.len() != g - 1 || alphas != 2 {
            return Err(format!(
                "{} planes with {alphas} α-planes",
                chain.planes.len()
            ));
        }
        counts.push(chain.planes.len());
    }
    let target = planes::config_from_graph(graph).map_err(|e| e.to_string())?;
    let decomp = families::ab_decomposition(g).map_err(|e| e.to_string())?;
    let colors = decomp.colors();
    let report =
        degeneration::verify_union(&data, &target, Some(&colors)).map_err(|e| e.to_string())?;
    if !report.isomorphic {
        return Err(report.mismatch.unwrap_or_default());
    }
    if g == 7 {
        let a = degeneration::limit_planes(&data.survivors, &data.a).map_err(|e| e.to_string())?;
        let got: BTreeSet<Span> = a.planes.iter().map(|p| p.span).collect();
        let want: BTreeSet<Span> = first_chain_spans(3).into_iter().map(|(_, s)| s).collect();
        if got != want {
            return Err(format!("limit spans {got:?} differ from the table"));
        }
    }
    Ok(format!(
        "compatible, {}+{} planes, union isomorphic",
        counts[0], counts[1]
    ))
}

fn genus_record(g: usize, seed: u64) -> Result<GenusRecord, SuiteError> {
    let graph = families::standard_graph(g).map_err(|e| SuiteError::Setup(e.to_string()))?;
    let valid = gcg::validate(&graph.to_data()).is_valid();
    let connectivity = edge_connectivity(&graph);
    let certificate = gauss::graph_corank(&graph, seed).map_err(gauss_error)?;
    let (hilbert_ok, oracle_ok, chains_ok, first_chain_spans) = match hilbert_checks(&graph) {
        Ok(h) => (h.k3, h.oracle, h.chains, h.table),
        Err(e) => (false, None, false, Some(Err(e))),
    };
    let degeneration = degeneration_check(&graph);
    let mut text = format!(
        "g={g:>2}  valid={valid} λ={connectivity} corank={} (rank {}/{})  hilbert={} chains={}",
        certificate.corank, certificate.rank, certificate.target_dim, hilbert_ok, chains_ok
    );
    match &degeneration {
        Ok(s) => text.push_str(&format!("  degeneration: {s}")),
        Err(e) => text.push_str(&format!("  degeneration FAILED: {e}")),
    }
    Ok(GenusRecord {
        genus: g,
        valid,
        connectivity,
        certificate,
        hilbert_ok,
        oracle_ok,
        chains_ok,
        degeneration,
        first_chain_spans,
        text,
    })
}

fn gauss_error(e: GaussError) -> SuiteError {
    match e {
        GaussError::BackendDisagreement(_) | GaussError::Exact(_) => {
            SuiteError::Invariant(e.to_string())
        }
        other => SuiteError::Setup(other.to_string()),
    }
}

fn line(id: u8, title: &'static str, passed: bool, detail: String) -> Line {
    Line {
        id,
        title,
        passed,
        detail,
        notes: Vec::new(),
    }
}

fn failures<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "all exact".into()
    } else {
        format!("failed: {}", v.join("; "))
    }
}

pub fn run(genera: RangeInclusive<usize>, seed: u64) -> Result<Report, SuiteError> {
    let start = Instant::now();
    if *genera.start() < 7 {
        return Err(SuiteError::Setup("suite genera start at 7".into()));
    }
    let list: Vec<usize> = genera.clone().collect();
    let records: Vec<GenusRecord> = list
        .par_iter()
        .map(|&g| genus_record(g, seed))
        .collect::<Result<_, _>>()?;

    let mut lines = Vec::new();

    // 1 and 2
    let c1: Vec<String> = records
        .iter()
        .filter(|r| expected_corank(r.genus) == Some(1))
        .filter(|r| r.certificate.corank != 1)
        .map(|r| format!("g={} corank {}", r.genus, r.certificate.corank))
        .collect();
    lines.push(line(
        1,
        "corank one for g = 11 and 13..20",
        c1.is_empty(),
        failures(c1),
    ));
    let c2 = records.iter().find(|r| r.genus == 12);
    lines.push(match c2 {
        Some(r) => line(
            2,
            "corank two at g = 12",
            r.certificate.corank == 2,
            format!("corank {} (expected 2)", r.certificate.corank),
        ),
        None => line(
            2,
            "corank two at g = 12",
            true,
            "g = 12 outside range".into(),
        ),
    });

    // 3
    let mut tilde = Vec::new();
    let mut tilde_fail = Vec::new();
    for (g, want) in [(7, 9), (8, 7)] {
        match families::tilde_graph(g) {
            Ok(t) => {
                let cert = gauss::graph_corank(&t, seed).map_err(gauss_error)?;
                tilde.push(format!("Ã{g}: {}", cert.corank));
                if cert.corank != want {
                    tilde_fail.push(format!("Ã{g} corank {} (expected {want})", cert.corank));
                }
            }
            Err(e) => tilde_fail.push(format!("Ã{g}: {e}")),
        }
    }
    let mut l3 = line(
        3,
        "minimal coranks of the tilde graphs",
        tilde_fail.is_empty(),
        {
            if tilde_fail.is_empty() {
                tilde.join(", ")
            } else {
                failures(tilde_fail)
            }
        },
    );
    for r in records.iter().filter(|r| r.genus == 9 || r.genus == 10) {
        let c = r.certificate.corank;
        match soft_corank(r.genus) {
            Some(s) if s != c => l3.notes.push(format!(
                "warning: G{} corank {c}, soft expectation {s}",
                r.genus
            )),
            Some(_) => l3
                .notes
                .push(format!("G{} corank {c} as softly expected", r.genus)),
            None => l3
                .notes
                .push(format!("G{} corank {c} (no expected value)", r.genus)),
        }
    }
    lines.push(l3);

    // 4
    let mut c4: Vec<String> = records
        .iter()
        .filter(|r| r.certificate.corank < 1)
        .map(|r| format!("G{} surjective", r.genus))
        .collect();
    let prisms: Vec<Result<Option<String>, SuiteError>> = list
        .par_iter()
        .map(|&g| {
            let p = families::prism_graph(g - 1).map_err(|e| SuiteError::Setup(e.to_string()))?;
            let cert = gauss::graph_corank(&p, seed).map_err(gauss_error)?;
            Ok((cert.corank < 1).then(|| format!("prism g={g} surjective")))
        })
        .collect();
    for p in prisms {
        c4.extend(p?);
    }
    lines.push(line(
        4,
        "corank >= 1 for standard and prism graphs",
        c4.is_empty(),
        failures(c4),
    ));

    // 5
    let shuffle_genera: Vec<usize> = SHUFFLE_GENERA
        .iter()
        .copied()
        .filter(|g| genera.contains(g))
        .collect();
    let c5: Vec<String> = shuffle_genera
        .par_iter()
        .map(|&g| -> Result<Vec<String>, SuiteError> {
            let graph =
                families::standard_graph(g).map_err(|e| SuiteError::Setup(e.to_string()))?;
            let base = records
                .iter()
                .find(|r| r.genus == g)
                .unwrap()
                .certificate
                .corank;
            let mut bad = Vec::new();
            for s in 0..SHUFFLES {
                let m: IntGaussianMatrix = gauss::convention_shuffle(&graph, seed ^ (s + 1));
                let cert = gauss::corank(&m, seed.wrapping_add(s)).map_err(gauss_error)?;
                if cert.corank != base {
                    bad.push(format!(
                        "g={g} shuffle {s}: corank {} vs {base}",
                        cert.corank
                    ));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    lines.push(line(
        5,
        "corank invariant under convention shuffles",
        c5.is_empty(),
        if c5.is_empty() {
            format!("{SHUFFLES} shuffles each at g in {shuffle_genera:?}; backends agree")
        } else {
            failures(c5)
        },
    ));

    // 6 and 7
    let c6: Vec<String> = records
        .iter()
        .filter(|r| !r.hilbert_ok || r.oracle_ok == Some(false))
        .map(|r| format!("g={}", r.genus))
        .collect();
    lines.push(line(
        6,
        "K3 Hilbert polynomial (g-1)d^2 + 2",
        c6.is_empty(),
        failures(c6),
    ));
    let c7: Vec<String> = records
        .iter()
        .filter(|r| !r.chains_ok)
        .map(|r| format!("g={}", r.genus))
        .collect();
    lines.push(line(
        7,
        "scroll and elliptic-curve Hilbert functions",
        c7.is_empty(),
        failures(c7),
    ));

    // 8
    let mut c8: Vec<String> = records
        .iter()
        .filter_map(|r| {
            r.degeneration
                .as_ref()
                .err()
                .map(|e| format!("g={}: {e}", r.genus))
        })
        .collect();
    if let Some(r) = records.iter().find(|r| r.genus == 7) {
        if let Some(Err(e)) = &r.first_chain_spans {
            c8.push(format!("g=7 table: {e}"));
        }
    }
    for g in [7, 8] {
        let check = || -> Result<(), String> {
            let data = degeneration::tilde_data(g).map_err(|e| e.to_string())?;
            let t = families::tilde_graph(g).map_err(|e| e.to_string())?;
            let target = planes::config_from_graph(&t).map_err(|e| e.to_string())?;
            let rep =
                degeneration::verify_union(&data, &target, None).map_err(|e| e.to_string())?;
            if !rep.isomorphic {
                return Err(rep.mismatch.unwrap_or_default());
            }
            Ok(())
        };
        if let Err(e) = check() {
            c8.push(format!("tilde g={g}: {e}"));
        }
    }
    lines.push(line(
        8,
        "degenerations of two scrolls",
        c8.is_empty(),
        failures(c8),
    ));

    // 9
    let mut c9: Vec<String> = (6..=30)
        .map(numerology::dimensions)
        .filter(|r| !r.consistent)
        .map(|r| format!("g={}", r.genus))
        .collect();
    for row in numerology::moduli_table() {
        if !row.consistent {
            c9.push(format!("table row g={}", row.row.genus));
        }
    }
    for g in 6..=30 {
        let r = numerology::dimensions(g);
        let codim_one = r.cone_codim == 1;
        if codim_one != (g == 11 || g >= 13) {
            c9.push(format!("cone codimension {} at g={g}", r.cone_codim));
        }
    }
    lines.push(line(
        9,
        "dimension counts and the moduli table",
        c9.is_empty(),
        failures(c9),
    ));

    let elapsed = start.elapsed();
    let others = lines.iter().all(|l| l.passed);
    lines.push(line(
        10,
        "suite within time limit and all criteria pass",
        others && elapsed < TIME_LIMIT,
        format!(
            "limit {}s, {}",
            TIME_LIMIT.as_secs(),
            if others {
                "all criteria pass"
            } else {
                "criteria above failed"
            }
        ),
    ));
    Ok(Report {
        lines,
        records,
        elapsed,
    })
}

pub fn render_text(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.records {
        s.push_str(&r.text);
        s.push('\n');
    }
    s.push('\n');
    for l in &report.lines {
        let mark = if l.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "criterion {:>2} {mark}  {}: {}\n",
            l.id, l.title, l.detail
        ));
        for n in &l.notes {
            s.push_str(&format!("             {n}\n"));
        }
    }
    s.push_str(&format!("elapsed {:.1}s\n", report.elapsed.as_secs_f64()));
    s.push_str(
        "note: criteria 1-3 test the nodal torsion formula itself; a failure there points at the model, \
         while criterion 5 guards the arithmetic.\n",
    );
    s
}
