//! Cycles of rational curves, double correspondences on them, and the
//! planes a pair of degenerating scrolls leaves behind.
//!
//! Components carry the labels of the data they come from: `1..=k` for the
//! odd and tilde data, `0..k` for the even data. Arithmetic is done on
//! residues mod k. Positions around the cycle are counted in half steps:
//! component j sits at `2j`, the vertex between j and j+1 at `2j + 1`.
//!
//! A pairing `j <-> c - j` reflects the cycle. Its axis meets the cycle at
//! the two positions fixed by the reflection, `c` and `c + k`; these are the
//! two ends of the double cover.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::planes::{PlaneConfig, PlaneError, Span};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenerationError {
    #[error("kind {kind} needs {need} k, got k = {k}")]
    Parity {
        kind: CorrKind,
        k: usize,
        need: &'static str,
    },
    #[error("kind {kind} is anchored at a {need}")]
    AnchorType { kind: CorrKind, need: &'static str },
    #[error("label {label} is outside the components {lo}..={hi}")]
    OutOfRange { label: usize, lo: usize, hi: usize },
    #[error("survivors {a} and {b} are the same component mod {k}")]
    DuplicateSurvivor { a: usize, b: usize, k: usize },
    #[error("need at least 4 survivors, got {0}")]
    TooFewSurvivors(usize),
    #[error("malformed data: `{expression}` {detail}")]
    MalformedData { expression: String, detail: String },
    #[error("tabulated data inconsistent: {0}")]
    DataAnomaly(String),
    #[error("survivors are not compatible with the correspondence: {0}")]
    Incompatible(String),
    #[error("β-plane of survivor {survivor} degenerates: partner point lies on its own line")]
    DegeneratePlane { survivor: usize },
    #[error("union has {found} distinct planes, expected {expected}")]
    UnionSize { found: usize, expected: usize },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A cycle of k rational curves with labels `base..base + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCycle {
    pub k: usize,
    pub base: usize,
}

impl RationalCycle {
    pub fn new(k: usize, base: usize) -> Self {
        RationalCycle { k, base }
    }

    pub fn residue(&self, label: usize) -> usize {
        label % self.k
    }

    /// Label of a residue class.
    pub fn label(&self, residue: usize) -> usize {
        let r = residue % self.k;
        if r < self.base {
            r + self.k
        } else {
            r
        }
    }

    pub fn check(&self, label: usize) -> Result<(), DegenerationError> {
        if label < self.base || label >= self.base + self.k {
            return Err(DegenerationError::OutOfRange {
                label,
                lo: self.base,
                hi: self.base + self.k - 1,
            });
        }
        Ok(())
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> {
        self.base..self.base + self.k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrKind {
    I,
    Ii,
    Iii,
}

impl fmt::Display for CorrKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorrKind::I => "i",
            CorrKind::Ii => "ii",
            CorrKind::Iii => "iii",
        })
    }
}

/// Kinds i and ii are anchored at a self-paired component, kind iii at the
/// vertex following a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    Component(usize),
    VertexAfter(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCorrespondence {
    pub cycle: RationalCycle,
    pub kind: CorrKind,
    pub anchor: Anchor,
    /// The pairing is `j <-> c - j (mod k)`.
    pub c: usize,
}

pub fn make_correspondence(
    cycle: RationalCycle,
    kind: CorrKind,
    anchor: Anchor,
) -> Result<DoubleCorrespondence, DegenerationError> {
    let k = cycle.k;
    let even = k.is_multiple_of(2);
    let c = match (kind, anchor) {
        (CorrKind::I, Anchor::Component(a)) => {
            if !even {
                return Err(DegenerationError::Parity {
                    kind,
                    k,
                    need: "even",
                });
            }
            2 * a
        }
        (CorrKind::Ii, Anchor::Component(a)) => {
            if even {
                return Err(DegenerationError::Parity {
                    kind,
                    k,
                    need: "odd",
                });
            }
            2 * a
        }
        (CorrKind::Iii, Anchor::VertexAfter(a)) => {
            if !even {
                return Err(DegenerationError::Parity {
                    kind,
                    k,
                    need: "even",
                });
            }
            2 * a + 1
        }
        (CorrKind::Iii, _) => {
            return Err(DegenerationError::AnchorType {
                kind,
                need: "vertex",
            })
        }
        _ => {
            return Err(DegenerationError::AnchorType {
                kind,
                need: "component",
            })
        }
    };
    let a = match anchor {
        Anchor::Component(a) | Anchor::VertexAfter(a) => a,
    };
    cycle.check(a)?;
    Ok(DoubleCorrespondence {
        cycle,
        kind,
        anchor,
        c: c % k,
    })
}

impl DoubleCorrespondence {
    pub fn partner(&self, label: usize) -> usize {
        let k = self.cycle.k;
        self.cycle.label((self.c + k - label % k) % k)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.cycle
            .labels()
            .filter(|&j| self.partner(j) == j)
            .collect()
    }

    /// Each orbit once, smaller label first, sorted.
    pub fn pairs(&self) -> Vec<[usize; 2]> {
        let set: BTreeSet<[usize; 2]> = self
            .cycle
            .labels()
            .map(|j| {
                let p = self.partner(j);
                [j.min(p), j.max(p)]
            })
            .collect();
        set.into_iter().collect()
    }

    /// The two ends, as half-step positions in `0..2k`.
    pub fn ends(&self) -> [usize; 2] {
        [self.c, self.c + self.cycle.k]
    }
}

/// Surviving components in increasing label order; the i-th one maps to the
/// line `l_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorSet {
    pub cycle: RationalCycle,
    pub labels: Vec<usize>,
}

impl SurvivorSet {
    pub fn new(cycle: RationalCycle, labels: &[usize]) -> Result<Self, DegenerationError> {
        let mut by_residue: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in labels {
            cycle.check(l)?;
            if let Some(prev) = by_residue.insert(cycle.residue(l), l) {
                return Err(DegenerationError::DuplicateSurvivor {
                    a: prev,
                    b: l,
                    k: cycle.k,
                });
            }
        }
        if labels.len() < 4 {
            return Err(DegenerationError::TooFewSurvivors(labels.len()));
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        Ok(SurvivorSet {
            cycle,
            labels: sorted,
        })
    }

    pub fn genus(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn contains(&self, label: usize) -> bool {
        self.line_of(label).is_some()
    }

    /// 1-based line number of a surviving component.
    pub fn line_of(&self, label: usize) -> Option<usize> {
        let r = self.cycle.residue(label);
        self.labels
            .iter()
            .position(|&l| self.cycle.residue(l) == r)
            .map(|i| i + 1)
    }

    /// Contracted components strictly between `l_j` and `l_{j+1}` map to
    /// `p_j`. Returns j, or None if the component survives.
    pub fn point_of(&self, label: usize) -> Option<usize> {
        if self.contains(label) {
            return None;
        }
        let l = self.cycle.label(label);
        let m = self.labels.len();
        // the first survivor above l; p_{j} with l_{j+1} that survivor
        match self.labels.iter().position(|&s| s > l) {
            Some(0) | None => Some(m),
            Some(i) => Some(i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// (a) a self-paired component survives
    FixedSurvives { component: usize },
    /// (b) the first survivors on the two sides of an end are not partners
    EndNotPaired { end: usize, up: usize, down: usize },
    /// (c) a survivor away from the ends is paired with a survivor
    ExtraPair { pair: [usize; 2] },
    /// (c) both ends see the same pair
    SameEndPair { pair: [usize; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FixedSurvives { component } => {
                write!(f, "(a) self-paired component {component} survives")
            }
            Violation::EndNotPaired { end, up, down } => write!(
                f,
                "(b) at end {} the first survivors {up} and {down} are not paired",
                half_step(*end)
            ),
            Violation::ExtraPair { pair } => {
                write!(f, "(c) survivors {} and {} are paired", pair[0], pair[1])
            }
            Violation::SameEndPair { pair } => {
                write!(f, "(c) both ends give the pair {} {}", pair[0], pair[1])
            }
        }
    }
}

fn half_step(pos: usize) -> String {
    if pos.is_multiple_of(2) {
        format!("component {}", pos / 2)
    } else {
        format!("vertex {}|{}", pos / 2, pos / 2 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    pub end_pairs: Vec<[usize; 2]>,
    pub violations: Vec<Violation>,
}

/// Checks conditions (a), (b), (c): no self-paired component survives; at
/// each end the nearest survivors on the two sides are partners; and those
/// two pairs are the only pairs of survivors.
pub fn is_compatible(survivors: &SurvivorSet, corr: &DoubleCorrespondence) -> Compatibility {
    let cycle = survivors.cycle;
    let k = cycle.k;
    let mut violations = Vec::new();
    for j in corr.fixed_points() {
        if survivors.contains(j) {
            violations.push(Violation::FixedSurvives { component: j });
        }
    }
    let surviving_at = |pos: usize| -> Option<usize> {
        let pos = pos % (2 * k);
        if pos.is_multiple_of(2) && survivors.contains(cycle.label(pos / 2)) {
            Some(cycle.label(pos / 2))
        } else {
            None
        }
    };
    let mut end_pairs = Vec::new();
    for end in corr.ends() {
        let up = (1..2 * k).find_map(|d| surviving_at(end + d));
        let down = (1..2 * k).find_map(|d| surviving_at(end + 2 * k - d));
        let (Some(up), Some(down)) = (up, down) else {
            continue;
        };
        if corr.partner(up) == down {
            end_pairs.push([up.min(down), up.max(down)]);
        } else {
            violations.push(Violation::EndNotPaired { end, up, down });
        }
    }
    if end_pairs.len() == 2 && end_pairs[0] == end_pairs[1] {
        violations.push(Violation::SameEndPair { pair: end_pairs[0] });
    }
    for &s in &survivors.labels {
        let p = corr.partner(s);
        if s < p && survivors.contains(p) && !end_pairs.contains(&[s, p]) {
            violations.push(Violation::ExtraPair { pair: [s, p] });
        }
    }
    Compatibility {
        compatible: violations.is_empty(),
        end_pairs,
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneKind {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitPlane {
    pub kind: PlaneKind,
    /// Survivors whose lines span the plane (one for β-planes).
    pub survivors: Vec<usize>,
    pub span: Span,
    /// Point indices j of the p_j in the plane.
    pub points: [usize; 3],
}

/// The g - 1 limit planes. Point labels are the indices j of p_j, 1..=g+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitChain {
    pub planes: Vec<LimitPlane>,
    pub config: PlaneConfig,
}

/// Planes of the flat limit: the end pairs give α-planes spanned by two
/// adjacent lines, every other survivor gives a β-plane spanned by its line
/// and the point its partner contracts to.
pub fn limit_planes(
    survivors: &SurvivorSet,
    corr: &DoubleCorrespondence,
) -> Result<LimitChain, DegenerationError> {
    let report = is_compatible(survivors, corr);
    if !report.compatible {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(DegenerationError::Incompatible(msgs.join("; ")));
    }
    let m = survivors.labels.len();
    let wrap = |j: usize| (j + m - 1) % m + 1;
    let line_points = |j: usize| [wrap(j + m - 1), j];
    let mut planes = Vec::with_capacity(m - 3);
    let mut done = BTreeSet::new();
    for &s in &survivors.labels {
        let j = survivors.line_of(s).unwrap();
        let partner = corr.partner(s);
        if let Some(pair) = report.end_pairs.iter().find(|p| p.contains(&s)) {
            if !done.insert(*pair) {
                continue;
            }
            let i = survivors.line_of(partner).unwrap();
            // adjacent lines l_a, l_{a+1} meet at p_a
            let a = if wrap(j + 1) == i { j } else { i };
            let mut pts = [wrap(a + m - 1), a, wrap(a + 1)];
            pts.sort_unstable();
            planes.push(LimitPlane {
                kind: PlaneKind::Alpha,
                survivors: vec![pair[0], pair[1]],
                span: Span::lines(j, i),
                points: pts,
            });
        } else {
            let p = survivors.point_of(partner).expect("partner contracted");
            let on_line = line_points(j);
            if on_line.contains(&p) {
                return Err(DegenerationError::DegeneratePlane { survivor: s });
            }
            let mut pts = [on_line[0], on_line[1], p];
            pts.sort_unstable();
            planes.push(LimitPlane {
                kind: PlaneKind::Beta,
                survivors: vec![s],
                span: Span::point_line(p, j),
                points: pts,
            });
        }
    }
    let config = PlaneConfig::new(
        m - 1,
        (1..=m).collect(),
        planes.iter().map(|p| p.points.to_vec()).collect(),
    )?;
    Ok(LimitChain { planes, config })
}

/// One survivor set with its two correspondences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusData {
    pub name: String,
    pub survivors: SurvivorSet,
    pub a: DoubleCorrespondence,
    pub b: DoubleCorrespondence,
}

impl GenusData {
    pub fn genus(&self) -> usize {
        self.survivors.genus()
    }

    pub fn cycle(&self) -> RationalCycle {
        self.survivors.cycle
    }
}

/// Odd genus g = 2n+1: k = 8n-4, components 1..=k.
pub fn odd_genus_data(n: usize) -> Result<GenusData, DegenerationError> {
    if n < 3 {
        return Err(DegenerationError::MalformedData {
            expression: "n - 2".into(),
            detail: format!("is not a component for n = {n}"),
        });
    }
    let k = 8 * n - 4;
    let cycle = RationalCycle::new(k, 1);
    let mut g = vec![n - 2];
    g.extend((n + 3..=3 * n + 1).step_by(2));
    g.push(5 * n - 4);
    g.extend((5 * n + 1..=7 * n - 1).step_by(2));
    let survivors = SurvivorSet::new(cycle, &g)?;
    // j <-> 8n-3-j: the axis passes between components k and 1
    let a = make_correspondence(cycle, CorrKind::Iii, Anchor::VertexAfter(k))?;
    // j <-> 2n+1-j: between components n and n+1
    let b = make_correspondence(cycle, CorrKind::Iii, Anchor::VertexAfter(n))?;
    Ok(GenusData {
        name: format!("odd n={n}"),
        survivors,
        a,
        b,
    })
}

/// Even genus g = 2n+2, with `[x]` read as floor. Components 0..k. Every
/// listed term is evaluated and checked; nothing is adjusted.
pub fn even_genus_data(n: usize) -> Result<GenusData, DegenerationError> {
    let n = n as i64;
    let fl = |a: i64, b: i64| a.div_euclid(b);
    let k = 8 * n + 6 * fl(n - 1, 2) - 11;
    if k <= 0 {
        return Err(DegenerationError::MalformedData {
            expression: "8n + 6[(n-1)/2] - 11".into(),
            detail: format!("= {k} for n = {n}"),
        });
    }
    let m3 = fl(3 * n - 3, 2);
    let mut terms: Vec<(String, i64)> = vec![
        ("[(n-2)/2]".into(), fl(n - 2, 2)),
        ("[(3n-7)/2]".into(), fl(3 * n - 7, 2)),
    ];
    let mut i = 0;
    while 3 * n + 1 + 4 * i <= 7 * n - 7 {
        terms.push((format!("[(3n+{})/2]", 1 + 4 * i), fl(3 * n + 1 + 4 * i, 2)));
        i += 1;
    }
    if i == 0 || 3 * n + 1 + 4 * (i - 1) != 7 * n - 7 {
        return Err(DegenerationError::MalformedData {
            expression: "[(3n+1)/2], [(3n+5)/2], ..., [(7n-7)/2]".into(),
            detail: format!(
                "does not reach 7n-7 = {} in steps of 4 for n = {n}",
                7 * n - 7
            ),
        });
    }
    terms.push(("3[(3n-3)/2]".into(), 3 * m3));
    terms.push(("2n+3[(3n-3)/2]-5".into(), 2 * n + 3 * m3 - 5));
    let last_run = 8 * n + 4 * fl(n - 1, 2) - fl(n - 2, 2) - 11;
    let mut i = 0;
    while 5 * m3 + 2 * i <= last_run {
        terms.push((format!("5[(3n-3)/2]+{}", 2 * i), 5 * m3 + 2 * i));
        i += 1;
    }
    if i == 0 || 5 * m3 + 2 * (i - 1) != last_run {
        return Err(DegenerationError::MalformedData {
            expression: "5[(3n-3)/2], 5[(3n-3)/2]+2, ..., 8n+4[(n-1)/2]-[(n-2)/2]-11".into(),
            detail: format!("does not reach {last_run} in steps of 2 for n = {n}"),
        });
    }
    terms.push((
        "8n+6[(n-1)/2]-[(n-2)/2]-11".into(),
        8 * n + 6 * fl(n - 1, 2) - fl(n - 2, 2) - 11,
    ));

    let mut seen: BTreeMap<i64, String> = BTreeMap::new();
    for (expr, v) in &terms {
        if *v < 0 || *v >= k {
            return Err(DegenerationError::MalformedData {
                expression: expr.clone(),
                detail: format!(
                    "= {v} is outside the components 0..={} (k = {k}, n = {n})",
                    k - 1
                ),
            });
        }
        if let Some(other) = seen.insert(*v, expr.clone()) {
            return Err(DegenerationError::MalformedData {
                expression: expr.clone(),
                detail: format!("= {v} repeats `{other}` (n = {n})"),
            });
        }
    }
    let cycle = RationalCycle::new(k as usize, 0);
    let labels: Vec<usize> = terms.iter().map(|(_, v)| *v as usize).collect();
    let survivors = SurvivorSet::new(cycle, &labels)?;
    let a = make_correspondence(cycle, CorrKind::Ii, Anchor::Component(0))?;
    let b = make_correspondence(cycle, CorrKind::Ii, Anchor::Component(m3 as usize))?;
    Ok(GenusData {
        name: format!("even n={n}"),
        survivors,
        a,
        b,
    })
}

/// Data for the standard genus-g graph (g >= 7).
pub fn standard_data(g: usize) -> Result<GenusData, DegenerationError> {
    if g % 2 == 1 {
        odd_genus_data((g - 1) / 2)
    } else {
        even_genus_data((g - 2) / 2)
    }
}

/// The genus 7 and 8 data for the tilde graphs, with the stated constants
/// audited against the construction.
pub fn tilde_data(g: usize) -> Result<GenusData, DegenerationError> {
    // (k, survivors, [(kind, anchor, stated c, stated self-paired)])
    type Given = (CorrKind, Anchor, usize, &'static [usize]);
    let (k, labels, stated): (usize, &[usize], [Given; 2]) = match g {
        7 => (
            18,
            &[1, 5, 7, 10, 11, 13, 15, 16],
            [
                (CorrKind::Iii, Anchor::VertexAfter(8), 17, &[]),
                (CorrKind::I, Anchor::Component(3), 6, &[3, 12]),
            ],
        ),
        8 => (
            23,
            &[1, 6, 8, 9, 12, 14, 16, 19, 20],
            [
                (CorrKind::Ii, Anchor::Component(22), 21, &[22]),
                (CorrKind::Ii, Anchor::Component(15), 7, &[15]),
            ],
        ),
        _ => {
            return Err(DegenerationError::MalformedData {
                expression: format!("g = {g}"),
                detail: "no tilde data".into(),
            })
        }
    };
    let cycle = RationalCycle::new(k, 1);
    let survivors = SurvivorSet::new(cycle, labels)?;
    let mut corrs = Vec::new();
    for (kind, anchor, c, fixed) in stated {
        let corr = make_correspondence(cycle, kind, anchor)?;
        if corr.c != c % k {
            return Err(DegenerationError::DataAnomaly(format!(
                "anchor {anchor:?} gives j <-> {} - j, stated {c} - j (mod {k})",
                corr.c
            )));
        }
        for &f in fixed {
            if (2 * f) % k != c % k {
                return Err(DegenerationError::DataAnomaly(format!(
                    "self-paired {f} needs 2*{f} = {c} mod {k}"
                )));
            }
        }
        if corr.fixed_points() != fixed {
            return Err(DegenerationError::DataAnomaly(format!(
                "fixed points {:?}, stated {fixed:?}",
                corr.fixed_points()
            )));
        }
        corrs.push(corr);
    }
    let b = corrs.pop().unwrap();
    let a = corrs.pop().unwrap();
    Ok(GenusData {
        name: format!("tilde g={g}"),
        survivors,
        a,
        b,
    })
}

/// Both limit chains as one configuration, first chain first.
pub fn limit_union(data: &GenusData) -> Result<PlaneConfig, DegenerationError> {
    let a = limit_planes(&data.survivors, &data.a)?;
    let b = limit_planes(&data.survivors, &data.b)?;
    let facets: Vec<Vec<usize>> = a
        .config
        .facets()
        .iter()
        .chain(b.config.facets())
        .cloned()
        .collect();
    let distinct: BTreeSet<&Vec<usize>> = facets.iter().collect();
    let g = data.genus();
    if distinct.len() != 2 * g - 2 {
        return Err(DegenerationError::UnionSize {
            found: distinct.len(),
            expected: 2 * g - 2,
        });
    }
    Ok(PlaneConfig::new(g, (1..=g + 1).collect(), facets)?)
}

/// A bijection of points carrying one facet list onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// `points[(a, b)]`: source point a goes to target point b.
    pub points: Vec<(usize, usize)>,
    /// `facets[i]` is the target facet of source facet i.
    pub facets: Vec<usize>,
}

/// Backtracking search for a point bijection mapping the source facets onto
/// the target facets. With colours, facet i of the source must land on a
/// target facet of the same colour.
pub fn find_isomorphism(
    source: &PlaneConfig,
    target: &PlaneConfig,
    colors: Option<(&[u8], &[u8])>,
) -> Option<Isomorphism> {
    let sp = source.points();
    let tp = target.points();
    if sp.len() != tp.len() || source.facets().len() != target.facets().len() {
        return None;
    }
    let target_index: BTreeMap<Vec<usize>, usize> = target
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    if target_index.len() != target.facets().len() {
        return None;
    }
    let degree = |c: &PlaneConfig, p: usize| c.facets().iter().filter(|f| f.contains(&p)).count();

    // order source points so each one after the first shares a facet with an earlier one
    let mut order: Vec<usize> = Vec::new();
    let mut placed = BTreeSet::new();
    while order.len() < sp.len() {
        let next = sp
            .iter()
            .copied()
            .filter(|p| !placed.contains(p))
            .max_by_key(|&p| {
                source
                    .facets()
                    .iter()
                    .filter(|f| f.contains(&p))
                    .map(|f| f.iter().filter(|x| placed.contains(*x)).count())
                    .sum::<usize>()
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    // facets to test once the point at that depth is placed
    let depth_of: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (i, f) in source.facets().iter().enumerate() {
        let d = f.iter().map(|p| depth_of[p]).max().unwrap();
        closing[d].push(i);
    }

    struct Search<'a> {
        source: &'a PlaneConfig,
        order: Vec<usize>,
        closing: Vec<Vec<usize>>,
        candidates: Vec<Vec<usize>>,
        target_index: BTreeMap<Vec<usize>, usize>,
        colors: Option<(&'a [u8], &'a [u8])>,
        map: BTreeMap<usize, usize>,
        used: BTreeSet<usize>,
        facet_map: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let p = self.order[depth];
            for t in self.candidates[depth].clone() {
                if self.used.contains(&t) {
                    continue;
                }
                self.map.insert(p, t);
                self.used.insert(t);
                let ok = self.closing[depth].iter().all(|&fi| {
                    let mut img: Vec<usize> =
                        self.source.facet(fi).iter().map(|x| self.map[x]).collect();
                    img.sort_unstable();
                    match self.target_index.get(&img) {
                        Some(&ti) => {
                            self.facet_map[fi] = ti;
                            self.colors.is_none_or(|(a, b)| a[fi] == b[ti])
                        }
                        None => false,
                    }
                });
                if ok && self.go(depth + 1) {
                    return true;
                }
                self.map.remove(&p);
                self.used.remove(&t);
            }
            false
        }
    }
    let candidates = order
        .iter()
        .map(|&p| {
            let d = degree(source, p);
            tp.iter()
                .copied()
                .filter(|&t| degree(target, t) == d)
                .collect()
        })
        .collect();
    let mut s = Search {
        source,
        order,
        closing,
        candidates,
        target_index,
        colors,
        map: BTreeMap::new(),
        used: BTreeSet::new(),
        facet_map: vec![usize::MAX; source.facets().len()],
    };
    if !s.go(0) {
        return None;
    }
    let facets = s.facet_map.clone();
    let distinct: BTreeSet<usize> = facets.iter().copied().collect();
    if distinct.len() != facets.len() {
        return None;
    }
    Some(Isomorphism {
        points: s.map.into_iter().collect(),
        facets,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub compatible_a: Compatibility,
    pub compatible_b: Compatibility,
    pub planes_a: usize,
    pub planes_b: usize,
    pub isomorphic: bool,
    pub witness: Option<Isomorphism>,
    pub mismatch: Option<String>,
}

/// Unions the two limit chains and compares with a target configuration.
/// With `target_colors`, the first chain must land on facets coloured 0 and
/// the second on facets coloured 1.
pub fn verify_union(
    data: &GenusData,
    target: &PlaneConfig,
    target_colors: Option<&[u8]>,
) -> Result<UnionReport, DegenerationError> {
    let compatible_a = is_compatible(&data.survivors, &data.a);
    let compatible_b = is_compatible(&data.survivors, &data.b);
    let la = limit_planes(&data.survivors, &data.a)?;
    let lb = limit_planes(&data.survivors, &data.b)?;
    let union = limit_union(data)?;
    let source_colors: Vec<u8> = std::iter::repeat_n(0, la.planes.len())
        .chain(std::iter::repeat_n(1, lb.planes.len()))
        .collect();
    let colors = target_colors.map(|t| (source_colors.as_slice(), t));
    let witness = find_isomorphism(&union, target, colors);
    let mismatch = if witness.is_some() {
        None
    } else if union.facets().len() != target.facets().len() {
        Some(format!(
            "{} planes against {}",
            union.facets().len(),
            target.facets().len()
        ))
    } else if union.f_vector() != target.f_vector() {
        Some(format!(
            "f-vectors {:?} and {:?}",
            union.f_vector(),
            target.f_vector()
        ))
    } else {
        Some("no label bijection carries one plane set onto the other".into())
    };
    Ok(UnionReport {
        compatible_a,
        compatible_b,
        planes_a: la.planes.len(),
        planes_b: lb.planes.len(),
        isomorphic: witness.is_some(),
        witness,
        mismatch,
    })
}
