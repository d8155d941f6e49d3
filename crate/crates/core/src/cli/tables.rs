//! Classification tables rendered from computed data.
//!
//! Family rows carry symbolic entries in a parameter `n`. A row fixes only
//! the residue pattern of `m` (or of the rank) and the diagram kinds; ranks,
//! sector-count formulas and expansions follow from the diagram data.

use std::fmt;

use clap::ValueEnum;

use crate::ade::{is_type_i, su2_invariant, DynkinDiagram, DynkinKind, InvariantLabel};
use crate::classification::{classify_minimal_range, classify_su2, ClassificationEntry};
use crate::error::{domain, Error, Result};
use crate::modular_data::canonical_label;

/// Largest `m` scanned for exceptional rows; every E-type Coxeter number is at most 30.
pub const TABLE_MAX_M: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "vir-mod-I")]
    VirModI,
    #[value(name = "min-I")]
    MinI,
    #[value(name = "min-II")]
    MinII,
    #[value(name = "su2-ext")]
    Su2Ext,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Markdown,
    Csv,
}

/// `a*n + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Linear {
    pub a: i64,
    pub b: i64,
}

impl Linear {
    pub const fn new(a: i64, b: i64) -> Self {
        Linear { a, b }
    }

    pub fn eval(self, n: i64) -> i64 {
        self.a * n + self.b
    }

    fn plus(self, c: i64) -> Self {
        Linear::new(self.a, self.b + c)
    }

    fn times(self, k: i64) -> Self {
        Linear::new(self.a * k, self.b * k)
    }

    fn half(self) -> Option<Self> {
        (self.a % 2 == 0 && self.b % 2 == 0).then(|| Linear::new(self.a / 2, self.b / 2))
    }

    fn is_monomial(self) -> bool {
        self.b == 0 || self.a == 0
    }

    /// Solves `self(n) = value` for an integer `n >= 1`.
    pub fn solve(self, value: i64) -> Option<i64> {
        if self.a == 0 {
            return None;
        }
        let d = value - self.b;
        (d % self.a == 0 && d / self.a >= 1).then(|| d / self.a)
    }

    fn factor(self) -> String {
        if self.is_monomial() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }

    fn subscript(self) -> String {
        let s = self.to_string();
        if s.chars().count() == 1 {
            s
        } else {
            format!("{{{s}}}")
        }
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            0 => return write!(f, "{}", self.b),
            1 => write!(f, "n")?,
            -1 => write!(f, "-n")?,
            a => write!(f, "{a}n")?,
        }
        match self.b {
            0 => Ok(()),
            b if b > 0 => write!(f, "+{b}"),
            b => write!(f, "{b}"),
        }
    }
}

fn kind_letter(kind: DynkinKind) -> &'static str {
    match kind {
        DynkinKind::A => "A",
        DynkinKind::D => "D",
        DynkinKind::E => "E",
    }
}

/// Rank of the A or D diagram with Coxeter number `h`.
pub fn symbolic_rank(kind: DynkinKind, h: Linear) -> Result<Linear> {
    match kind {
        DynkinKind::A => Ok(h.plus(-1)),
        DynkinKind::D => h
            .half()
            .map(|x| x.plus(1))
            .ok_or_else(|| domain(format!("D diagram needs an even Coxeter number, got {h}"))),
        DynkinKind::E => Err(domain("E diagrams have no families")),
    }
}

/// Sector counts `(ab, full, chiral, ambichiral)` of an A or D diagram of
/// symbolic rank `r`. The parity of a D rank must be fixed by `r`.
pub fn symbolic_counts(kind: DynkinKind, r: Linear) -> Result<[Linear; 4]> {
    Ok(match kind {
        DynkinKind::A => [r; 4],
        DynkinKind::D => match (r.a % 2, r.b.rem_euclid(2)) {
            (0, 0) => [r, r.times(2), r, r.half().expect("even rank").plus(1)],
            (0, _) => [r, r.times(2).plus(-3), r.times(2).plus(-3), r.times(2).plus(-3)],
            _ => return Err(domain(format!("parity of D rank {r} is not fixed"))),
        },
        DynkinKind::E => return Err(domain("E diagrams have no families")),
    })
}

/// `x * y / 2` for pair counts. An even factor is halved in place (the A
/// factor first if both qualify) and written first; otherwise monomials lead
/// and `/2` is appended.
fn half_product(x: (Linear, DynkinKind), y: (Linear, DynkinKind)) -> String {
    let mut order = [x, y];
    order.sort_by_key(|(_, k)| *k != DynkinKind::A);
    for i in 0..2 {
        if let Some(h) = order[i].0.half() {
            return format!("{}{}", h.factor(), order[1 - i].0.factor());
        }
    }
    let (mut p, mut q) = (x.0, y.0);
    if !p.is_monomial() && q.is_monomial() {
        std::mem::swap(&mut p, &mut q);
    }
    format!("{}{}/2", p.factor(), q.factor())
}

/// A family of minimal-model pairs `(G, G')` at `m = pattern(n)`.
#[derive(Debug, Clone, Copy)]
pub struct PairFamily {
    pub m: Linear,
    pub first: DynkinKind,
    pub second: DynkinKind,
}

impl PairFamily {
    pub fn ranks(self) -> Result<(Linear, Linear)> {
        Ok((
            symbolic_rank(self.first, self.m)?,
            symbolic_rank(self.second, self.m.plus(1))?,
        ))
    }

    pub fn tex(self) -> Result<String> {
        let (r, s) = self.ranks()?;
        Ok(format!(
            "({}_{},{}_{})",
            kind_letter(self.first),
            r.subscript(),
            kind_letter(self.second),
            s.subscript()
        ))
    }

    /// Count columns as strings, in table order.
    pub fn count_cells(self) -> Result<Vec<String>> {
        let (r, s) = self.ranks()?;
        let cg = symbolic_counts(self.first, r)?;
        let ch = symbolic_counts(self.second, s)?;
        Ok((0..4)
            .map(|i| half_product((cg[i], self.first), (ch[i], self.second)))
            .collect())
    }

    /// Count columns evaluated at `n`.
    pub fn counts_at(self, n: i64) -> Result<[i64; 4]> {
        let (r, s) = self.ranks()?;
        let cg = symbolic_counts(self.first, r)?;
        let ch = symbolic_counts(self.second, s)?;
        Ok([0, 1, 2, 3].map(|i| cg[i].eval(n) * ch[i].eval(n) / 2))
    }

    /// Concrete pair at `m`, if `m` belongs to the family.
    pub fn instance(self, m: u32) -> Option<InvariantLabel> {
        let n = self.m.solve(i64::from(m))?;
        let (r, s) = self.ranks().ok()?;
        let g = DynkinDiagram::new(self.first, u32::try_from(r.eval(n)).ok()?).ok()?;
        let h = DynkinDiagram::new(self.second, u32::try_from(s.eval(n)).ok()?).ok()?;
        (g.constructible_at(m - 2) && h.constructible_at(m - 1)).then_some(InvariantLabel::Minimal(g, h))
    }
}

pub const TYPE_I_FAMILIES: [PairFamily; 3] = [
    PairFamily { m: Linear::new(1, 0), first: DynkinKind::A, second: DynkinKind::A },
    PairFamily { m: Linear::new(4, 1), first: DynkinKind::A, second: DynkinKind::D },
    PairFamily { m: Linear::new(4, 2), first: DynkinKind::D, second: DynkinKind::A },
];

pub const TYPE_II_FAMILIES: [PairFamily; 2] = [
    PairFamily { m: Linear::new(4, 0), first: DynkinKind::D, second: DynkinKind::A },
    PairFamily { m: Linear::new(4, 3), first: DynkinKind::A, second: DynkinKind::D },
];

fn has_e(label: InvariantLabel) -> bool {
    match label {
        InvariantLabel::Su2(g) => g.kind == DynkinKind::E,
        InvariantLabel::Minimal(g, h) => g.kind == DynkinKind::E || h.kind == DynkinKind::E,
    }
}

fn minimal_m(e: &ClassificationEntry) -> u32 {
    match e.algebra {
        crate::modular_data::Algebra::Minimal { m } => m,
        crate::modular_data::Algebra::Su2 { level } => level,
    }
}

/// Exceptional rows: every E-type minimal entry with `m <= TABLE_MAX_M`.
fn exceptional_entries(type_i: bool) -> Result<Vec<ClassificationEntry>> {
    Ok(classify_minimal_range(TABLE_MAX_M)?
        .into_iter()
        .filter(|e| e.type_i == type_i && has_e(e.label))
        .collect())
}

/// Header and body of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

const COUNT_HEADER: [&str; 6] = ["m", "Labels for Z", "A-B", "B-B", "B-B chiral", "B-B ambichiral"];

fn counts_table(families: &[PairFamily], type_i: bool) -> Result<Table> {
    let mut rows = Vec::new();
    for f in families {
        let mut row = vec![f.m.to_string(), f.tex()?];
        row.extend(f.count_cells()?);
        rows.push(row);
    }
    for e in exceptional_entries(type_i)? {
        let mut row = vec![minimal_m(&e).to_string(), e.label.tex()];
        row.extend(e.counts.as_array().iter().map(u64::to_string));
        rows.push(row);
    }
    Ok(Table {
        header: COUNT_HEADER.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn conformal_target(g: DynkinDiagram) -> &'static str {
    match g.rank {
        6 => "SO(5)_1",
        _ => "(G_2)_1",
    }
}

/// Smallest `n >= 1` at which a rank pattern names a local extension
/// (level 0 counts as the trivial theory).
fn su2_family_start(kind: DynkinKind, rank: Linear) -> Result<i64> {
    for n in 1..=64 {
        let Ok(r) = u32::try_from(rank.eval(n)) else { continue };
        let Ok(g) = DynkinDiagram::new(kind, r) else { continue };
        let Some(k) = g.coxeter().checked_sub(2) else { continue };
        if k == 0 || classify_su2(k)?.iter().any(|e| e.label == InvariantLabel::Su2(g)) {
            return Ok(n);
        }
    }
    Err(Error::Classification(format!("no local {kind:?} extension found")))
}

fn su2_table() -> Result<Table> {
    let mut rows = Vec::new();
    for (kind, rank) in [(DynkinKind::A, Linear::new(1, 0)), (DynkinKind::D, Linear::new(2, 0))] {
        let coxeter = match kind {
            DynkinKind::A => rank.plus(1),
            _ => rank.times(2).plus(-2),
        };
        let start = su2_family_start(kind, rank)?;
        let level = coxeter.plus(-2);
        let tex = format!("{}_{}", kind_letter(kind), rank.subscript());
        let description = match kind {
            DynkinKind::A => "SU(2)_k itself".to_string(),
            _ => {
                let g = DynkinDiagram::new(kind, rank.eval(start) as u32)?;
                let k = level.eval(start) as u32;
                let e = classify_su2(k)?
                    .into_iter()
                    .find(|e| e.label == InvariantLabel::Su2(g))
                    .ok_or_else(|| Error::Classification(format!("{g} missing at level {k}")))?;
                format!("Simple current extension of index {}", e.index.round())
            }
        };
        rows.push(vec![format!("{level} (n≥{start})"), tex, description]);
    }
    for k in 1..=TABLE_MAX_M - 2 {
        for e in classify_su2(k)?.into_iter().filter(|e| has_e(e.label)) {
            let InvariantLabel::Su2(g) = e.label else { continue };
            rows.push(vec![
                k.to_string(),
                g.tex(),
                format!("Conformal inclusion SU(2)_{k} ⊂ {}", conformal_target(g)),
            ]);
        }
    }
    Ok(Table {
        header: ["level k", "Dynkin diagram", "Description"].iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

/// Which Kac coordinate carries the non-A factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    First,
    Second,
}

/// Character expansion of a type I minimal invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expansion {
    /// `sum_{p,q} |chi_(p,q)|^2 / 2`.
    Diagonal,
    /// `sum_{x odd} |chi_x + chi_{h-x}|^2 / 2` in coordinate `coord`, where `h`
    /// is the Coxeter number of the D factor.
    Reflect { coord: Coord, h: Linear },
    /// `sum_{y=1}^{range} { sum_blocks |sum_{x in block} chi|^2 } / 2`.
    Blocks { coord: Coord, range: u32, blocks: Vec<Vec<u32>> },
}

fn chi(coord: Coord, x: &str, y: &str) -> String {
    match coord {
        Coord::First => format!("χ_({x},{y})"),
        Coord::Second => format!("χ_({y},{x})"),
    }
}

impl Expansion {
    pub fn render(&self) -> String {
        match self {
            Expansion::Diagonal => "Σ_{p,q} |χ_(p,q)|²/2".to_string(),
            Expansion::Reflect { coord, h } => {
                let (x, y) = match coord {
                    Coord::First => ("p", "q"),
                    Coord::Second => ("q", "p"),
                };
                format!(
                    "Σ_{{{x} odd}} |{}+{}|²/2",
                    chi(*coord, x, y),
                    chi(*coord, &format!("{h}-{x}"), y)
                )
            }
            Expansion::Blocks { coord, range, blocks } => {
                let y = match coord {
                    Coord::First => "q",
                    Coord::Second => "p",
                };
                let terms: Vec<String> = blocks
                    .iter()
                    .map(|b| {
                        let sum: Vec<String> = b.iter().map(|x| chi(*coord, &x.to_string(), y)).collect();
                        format!("|{}|²", sum.join("+"))
                    })
                    .collect();
                format!("Σ_{{{y}=1}}^{{{range}}} {{{}}}/2", terms.join("+"))
            }
        }
    }

    /// Class-level matrix of the expansion at `m`, in canonical label order.
    ///
    /// Sums run over all Kac labels. The `1/2` absorbs the identification
    /// `(p,q) ~ (m-p, m+1-q)`; in the `Reflect` form the pair `{x, h-x}` is also
    /// met twice (`x` and `h-x` are both odd), so its total weight is `1/4`.
    pub fn evaluate(&self, m: u32) -> Result<Vec<Vec<u32>>> {
        let labels = crate::modular_data::minimal_labels(m);
        let n = labels.len();
        let index = |p: u32, q: u32| -> Result<usize> {
            let l = canonical_label(m, p, q)?;
            Ok(labels.iter().position(|x| *x == l).expect("canonical"))
        };
        let at = |coord: Coord, x: u32, y: u32| match coord {
            Coord::First => index(x, y),
            Coord::Second => index(y, x),
        };
        let mut acc = vec![vec![0u32; n]; n];
        let mut add = |terms: &[usize]| {
            for &a in terms {
                for &b in terms {
                    acc[a][b] += 1;
                }
            }
        };
        let divisor = match self {
            Expansion::Diagonal => {
                for p in 1..m {
                    for q in 1..=m {
                        add(&[index(p, q)?]);
                    }
                }
                2
            }
            Expansion::Reflect { coord, .. } => {
                // Coxeter number of the D factor
                let h = match coord {
                    Coord::First => m,
                    Coord::Second => m + 1,
                };
                let (xs, ys) = match coord {
                    Coord::First => (m - 1, m),
                    Coord::Second => (m, m - 1),
                };
                for x in (1..=xs).step_by(2) {
                    for y in 1..=ys {
                        add(&[at(*coord, x, y)?, at(*coord, h - x, y)?]);
                    }
                }
                4
            }
            Expansion::Blocks { coord, range, blocks } => {
                for y in 1..=*range {
                    for b in blocks {
                        let terms = b.iter().map(|&x| at(*coord, x, y)).collect::<Result<Vec<_>>>()?;
                        add(&terms);
                    }
                }
                2
            }
        };
        if acc.iter().flatten().any(|x| x % divisor != 0) {
            return Err(Error::Classification("expansion does not divide evenly".into()));
        }
        Ok(acc.into_iter().map(|r| r.into_iter().map(|x| x / divisor).collect()).collect())
    }
}

/// Expansion of a family row.
pub fn family_expansion(f: PairFamily) -> Result<Expansion> {
    Ok(match (f.first, f.second) {
        (DynkinKind::A, DynkinKind::A) => Expansion::Diagonal,
        (DynkinKind::D, _) => Expansion::Reflect { coord: Coord::First, h: f.m },
        (_, DynkinKind::D) => Expansion::Reflect { coord: Coord::Second, h: f.m.plus(1) },
        _ => return Err(domain("no family expansion for E factors")),
    })
}

/// Expansion of an exceptional pair, read off from the block decomposition
/// of its E-type SU(2) factor.
pub fn exceptional_expansion(label: InvariantLabel) -> Result<Expansion> {
    let InvariantLabel::Minimal(g, h) = label else {
        return Err(domain("expansions are defined for minimal-model pairs"));
    };
    let (coord, e, other) = if g.kind == DynkinKind::E { (Coord::First, g, h) } else { (Coord::Second, h, g) };
    let z = su2_invariant(e, e.coxeter() - 2)?;
    let blocks = is_type_i(&z)?.ok_or_else(|| Error::Classification(format!("{e} is not block-diagonal")))?;
    Ok(Expansion::Blocks {
        coord,
        range: other.rank,
        blocks: blocks
            .iter()
            .map(|b| b.iter().map(|&(a, _)| a as u32 + 1).collect())
            .collect(),
    })
}

fn vir_mod_table() -> Result<Table> {
    let mut rows = Vec::new();
    for f in TYPE_I_FAMILIES {
        rows.push(vec![f.tex()?, family_expansion(f)?.render()]);
    }
    for e in exceptional_entries(true)? {
        rows.push(vec![e.label.tex(), exceptional_expansion(e.label)?.render()]);
    }
    Ok(Table {
        header: vec!["Label".into(), "Z".into()],
        rows,
    })
}

pub fn build_table(which: TableId) -> Result<Table> {
    match which {
        TableId::MinI => counts_table(&TYPE_I_FAMILIES, true),
        TableId::MinII => counts_table(&TYPE_II_FAMILIES, false),
        TableId::Su2Ext => su2_table(),
        TableId::VirModI => vir_mod_table(),
    }
}

fn markdown(t: &Table) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| {
        let cells: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
        format!("| {} |\n", cells.join(" | "))
    };
    out.push_str(&line(&t.header));
    out.push_str(&format!("|{}\n", "---|".repeat(t.header.len())));
    for r in &t.rows {
        out.push_str(&line(r));
    }
    out
}

fn csv_text(t: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| domain(format!("csv: {e}"));
    w.write_record(&t.header).map_err(wrap)?;
    for r in &t.rows {
        w.write_record(r).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| domain(format!("csv: {e}")))
}

pub fn render(t: &Table, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Markdown => Ok(markdown(t)),
        TableFormat::Csv => csv_text(t),
    }
}

pub fn emit_table(which: TableId, format: TableFormat) -> Result<String> {
    render(&build_table(which)?, format)
}
