//! A-D-E Dynkin diagrams, the modular invariants they label, and the type I
//! (block-diagonal) decision.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::invariants::ModularInvariant;
use crate::modular_data::{canonical_label, minimal_labels, Algebra, MinimalLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinKind {
    A,
    D,
    E,
}

/// Sector counts attached to an extension: A-B sectors, B-B sectors, chiral
/// (alpha-induced) B-B sectors and ambichiral B-B sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorCounts {
    pub ab: u64,
    pub full: u64,
    pub chiral: u64,
    pub ambichiral: u64,
}

impl SectorCounts {
    pub fn as_array(self) -> [u64; 4] {
        [self.ab, self.full, self.chiral, self.ambichiral]
    }

    /// Product rule for minimal-model pairs: `counts(G) * counts(G') / 2`.
    pub fn pair(g: SectorCounts, h: SectorCounts) -> SectorCounts {
        SectorCounts {
            ab: g.ab * h.ab / 2,
            full: g.full * h.full / 2,
            chiral: g.chiral * h.chiral / 2,
            ambichiral: g.ambichiral * h.ambichiral / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinDiagram {
    pub kind: DynkinKind,
    pub rank: u32,
}

impl DynkinDiagram {
    pub fn new(kind: DynkinKind, rank: u32) -> Result<Self> {
        let ok = match kind {
            DynkinKind::A => rank >= 1,
            DynkinKind::D => rank >= 3,
            DynkinKind::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinDiagram { kind, rank })
        } else {
            Err(domain(format!("no Dynkin diagram {kind:?}{rank}")))
        }
    }

    pub fn a(rank: u32) -> Self {
        Self::new(DynkinKind::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: u32) -> Self {
        Self::new(DynkinKind::D, rank).expect("D_n needs n >= 3")
    }

    pub fn e(rank: u32) -> Self {
        Self::new(DynkinKind::E, rank).expect("E_n needs n in 6..=8")
    }

    pub fn coxeter(self) -> u32 {
        match self.kind {
            DynkinKind::A => self.rank + 1,
            DynkinKind::D => 2 * self.rank - 2,
            DynkinKind::E => match self.rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// Exponents in ascending order, with multiplicity.
    pub fn exponents(self) -> Vec<u32> {
        let mut out: Vec<u32> = match self.kind {
            DynkinKind::A => (1..=self.rank).collect(),
            DynkinKind::D => (0..self.rank - 1)
                .map(|i| 2 * i + 1)
                .chain(std::iter::once(self.rank - 1))
                .collect(),
            DynkinKind::E => match self.rank {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
        };
        out.sort_unstable();
        out
    }

    pub fn counts(self) -> SectorCounts {
        let n = u64::from(self.rank);
        let (ab, full, chiral, ambichiral) = match self.kind {
            DynkinKind::A => (n, n, n, n),
            DynkinKind::D if n % 2 == 0 => (n, 2 * n, n, n / 2 + 1),
            DynkinKind::D => (n, 2 * n - 3, 2 * n - 3, 2 * n - 3),
            DynkinKind::E => match n {
                6 => (6, 12, 6, 3),
                7 => (7, 17, 10, 6),
                _ => (8, 32, 8, 2),
            },
        };
        SectorCounts {
            ab,
            full,
            chiral,
            ambichiral,
        }
    }

    /// True for the diagrams whose invariant is block-diagonal:
    /// A, D with even rank, E6 and E8.
    pub fn is_block_type(self) -> bool {
        match self.kind {
            DynkinKind::A => true,
            DynkinKind::D => self.rank % 2 == 0,
            DynkinKind::E => self.rank != 7,
        }
    }

    /// Whether the SU(2) invariant of this diagram exists at level `k`.
    pub fn constructible_at(self, k: u32) -> bool {
        if self.coxeter() != k + 2 {
            return false;
        }
        match self.kind {
            DynkinKind::A => true,
            DynkinKind::D => k % 2 == 0 && k >= 4,
            DynkinKind::E => matches!(k, 10 | 16 | 28),
        }
    }

    /// Subscripted form such as `A_{10}` or `E_6`.
    pub fn tex(self) -> String {
        if self.rank < 10 {
            format!("{:?}_{}", self.kind, self.rank)
        } else {
            format!("{:?}_{{{}}}", self.kind, self.rank)
        }
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// All diagrams with Coxeter number `h`, ordered A, D, E.
pub fn diagrams_with_coxeter(h: u32) -> Vec<DynkinDiagram> {
    let mut out = Vec::new();
    if h >= 2 {
        out.push(DynkinDiagram::a(h - 1));
    }
    if h % 2 == 0 && h >= 6 {
        out.push(DynkinDiagram::d(h / 2 + 1));
    }
    match h {
        12 => out.push(DynkinDiagram::e(6)),
        18 => out.push(DynkinDiagram::e(7)),
        30 => out.push(DynkinDiagram::e(8)),
        _ => {}
    }
    out
}

/// Label of an invariant: one diagram for SU(2)_k, an ordered pair for
/// minimal model `m` (Coxeter numbers `m` and `m+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantLabel {
    Su2(DynkinDiagram),
    Minimal(DynkinDiagram, DynkinDiagram),
}

impl InvariantLabel {
    pub fn tex(self) -> String {
        match self {
            InvariantLabel::Su2(g) => g.tex(),
            InvariantLabel::Minimal(g, h) => format!("({},{})", g.tex(), h.tex()),
        }
    }

    pub fn counts(self) -> SectorCounts {
        match self {
            InvariantLabel::Su2(g) => g.counts(),
            InvariantLabel::Minimal(g, h) => SectorCounts::pair(g.counts(), h.counts()),
        }
    }

    pub fn is_block_type(self) -> bool {
        match self {
            InvariantLabel::Su2(g) => g.is_block_type(),
            InvariantLabel::Minimal(g, h) => g.is_block_type() && h.is_block_type(),
        }
    }
}

impl fmt::Display for InvariantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantLabel::Su2(g) => write!(f, "{g}"),
            InvariantLabel::Minimal(g, h) => write!(f, "({g},{h})"),
        }
    }
}

/// The standard SU(2)_k invariant of type `g` (`coxeter(g) = k + 2`).
pub fn su2_invariant(g: DynkinDiagram, k: u32) -> Result<ModularInvariant> {
    if !g.constructible_at(k) {
        return Err(domain(format!("{g} has no SU(2) invariant at level {k}")));
    }
    let n = (k + 1) as usize;
    let k = k as usize;
    let mut z = ModularInvariant::from_entries(Algebra::Su2 { level: k as u32 }, n, vec![0; n * n])?;
    let add_block = |z: &mut ModularInvariant, block: &[usize]| {
        for &a in block {
            for &b in block {
                z.set(a, b, z.get(a, b) + 1);
            }
        }
    };
    match (g.kind, g.rank) {
        (DynkinKind::A, _) => {
            for a in 0..n {
                z.set(a, a, 1);
            }
        }
        (DynkinKind::D, _) if k % 4 == 0 => {
            for a in (0..k / 2).step_by(2) {
                add_block(&mut z, &[a, k - a]);
            }
            z.set(k / 2, k / 2, 2);
        }
        (DynkinKind::D, _) => {
            for a in 0..n {
                let b = if a % 2 == 0 { a } else { k - a };
                z.set(a, b, 1);
            }
        }
        (DynkinKind::E, 6) => {
            for block in [[0, 6], [3, 7], [4, 10]] {
                add_block(&mut z, &block);
            }
        }
        (DynkinKind::E, 7) => {
            for block in [[0, 16], [4, 12], [6, 10]] {
                add_block(&mut z, &block);
            }
            z.set(8, 8, 1);
            for a in [2, 14] {
                z.set(a, 8, 1);
                z.set(8, a, 1);
            }
        }
        _ => {
            for block in [[0, 10, 18, 28], [6, 12, 16, 22]] {
                add_block(&mut z, &block);
            }
        }
    }
    Ok(z)
}

/// Minimal-model invariant built from two SU(2) invariants `X` (level `m-2`)
/// and `Y` (level `m-1`):
/// `Z[(p,q)],[(p',q')] = X_{p-1,p'-1} Y_{q-1,q'-1} + X_{m-p-1,p'-1} Y_{m-q,q'-1}`.
pub fn minimal_invariant(g: DynkinDiagram, h: DynkinDiagram, m: u32) -> Result<ModularInvariant> {
    if m < 3 || g.coxeter() != m || h.coxeter() != m + 1 {
        return Err(domain(format!("({g},{h}) is not a pair for m = {m}")));
    }
    let x = su2_invariant(g, m - 2)?;
    let y = su2_invariant(h, m - 1)?;
    let labels = minimal_labels(m);
    let n = labels.len();
    let mu = m as usize;
    let mut entries = vec![0u32; n * n];
    for (i, a) in labels.iter().enumerate() {
        let (p, q) = (a.p as usize, a.q as usize);
        for (j, b) in labels.iter().enumerate() {
            let (p2, q2) = (b.p as usize, b.q as usize);
            entries[i * n + j] = x.get(p - 1, p2 - 1) * y.get(q - 1, q2 - 1)
                + x.get(mu - p - 1, p2 - 1) * y.get(mu - q, q2 - 1);
        }
    }
    ModularInvariant::from_entries(Algebra::Minimal { m }, n, entries)
}

fn match_exponents(h: u32, multiset: &[u32], what: &str) -> Result<DynkinDiagram> {
    let hits: Vec<DynkinDiagram> = diagrams_with_coxeter(h)
        .into_iter()
        .filter(|g| g.exponents() == multiset)
        .collect();
    match hits.as_slice() {
        [g] => Ok(*g),
        [] => Err(Error::Labeling(format!(
            "{what} multiset {multiset:?} matches no diagram with Coxeter number {h}"
        ))),
        _ => Err(Error::Labeling(format!(
            "{what} multiset {multiset:?} matches several diagrams: {hits:?}"
        ))),
    }
}

fn expand(mults: impl Iterator<Item = (u32, u32)>) -> Vec<u32> {
    let mut out: Vec<u32> = mults.flat_map(|(x, k)| std::iter::repeat(x).take(k as usize)).collect();
    out.sort_unstable();
    out
}

/// A-D-E label read off the diagonal of an invariant.
///
/// For SU(2)_k the multiset `{a+1 with multiplicity Z_aa}` must equal the
/// exponents of a unique diagram of Coxeter number `k+2`. For minimal model
/// `m` the class diagonal is unfolded onto all Kac labels `(p,q)`; for the
/// invariants of this family that grid is an outer product `u(p) v(q)` with
/// `u(1) = v(1) = 1`, and `u`, `v` are matched against Coxeter numbers `m` and
/// `m+1`.
pub fn label_invariant(z: &ModularInvariant) -> Result<InvariantLabel> {
    match z.algebra {
        Algebra::Su2 { level } => {
            let diag = expand((0..z.size()).map(|a| (a as u32 + 1, z.get(a, a))));
            match_exponents(level + 2, &diag, "diagonal").map(InvariantLabel::Su2)
        }
        Algebra::Minimal { m } => {
            let labels = minimal_labels(m);
            let mu = m as usize;
            // grid[p-1][q-1] = Z_{[p,q],[p,q]}
            let mut grid = vec![vec![0u32; mu]; mu - 1];
            for (i, l) in labels.iter().enumerate() {
                let v = z.get(i, i);
                let partner = l.partner(m);
                grid[(l.p - 1) as usize][(l.q - 1) as usize] = v;
                grid[(partner.p - 1) as usize][(partner.q - 1) as usize] = v;
            }
            if grid[0][0] != 1 {
                return Err(Error::Labeling("vacuum diagonal entry is not 1".into()));
            }
            let u: Vec<u32> = (0..mu - 1).map(|p| grid[p][0]).collect();
            let v: Vec<u32> = (0..mu).map(|q| grid[0][q]).collect();
            for p in 0..mu - 1 {
                for q in 0..mu {
                    if grid[p][q] != u[p] * v[q] {
                        return Err(Error::Labeling(format!(
                            "diagonal at ({},{}) is {} but the coordinate projections predict {}",
                            p + 1,
                            q + 1,
                            grid[p][q],
                            u[p] * v[q]
                        )));
                    }
                }
            }
            let first = expand(u.iter().enumerate().map(|(p, &k)| (p as u32 + 1, k)));
            let second = expand(v.iter().enumerate().map(|(q, &k)| (q as u32 + 1, k)));
            let g = match_exponents(m, &first, "first-coordinate")?;
            let h = match_exponents(m + 1, &second, "second-coordinate")?;
            Ok(InvariantLabel::Minimal(g, h))
        }
    }
}

/// One block vector of a type I factorization: `(label index, coefficient)`.
pub type Block = Vec<(usize, u32)>;

/// Node budget of the factorization search.
pub const TYPE_I_NODE_LIMIT: usize = 1_000_000;

/// Decides whether `Z = sum_i b_i b_i^T` for non-negative integer vectors
/// `b_i`, returning the blocks when it does.
///
/// The search always extends the block covering the lowest label with a
/// non-zero residual diagonal, so every factorization is reachable and block
/// permutations are never revisited.
pub fn is_type_i(z: &ModularInvariant) -> Result<Option<Vec<Block>>> {
    let n = z.size();
    let mut residual: Vec<i64> = z.entries().iter().map(|&x| i64::from(x)).collect();
    let mut blocks = Vec::new();
    let mut nodes = 0usize;
    if factor(&mut residual, n, &mut blocks, &mut nodes)? {
        blocks.sort();
        Ok(Some(blocks))
    } else {
        Ok(None)
    }
}

fn isqrt(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Every non-zero entry needs non-zero diagonals on both its row and column.
fn consistent(residual: &[i64], n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            let x = residual[a * n + b];
            x == 0 || (x > 0 && residual[a * n + a] > 0 && residual[b * n + b] > 0)
        })
    })
}

fn factor(residual: &mut [i64], n: usize, blocks: &mut Vec<Block>, nodes: &mut usize) -> Result<bool> {
    *nodes += 1;
    if *nodes > TYPE_I_NODE_LIMIT {
        return Err(Error::Undecided(*nodes));
    }
    if !consistent(residual, n) {
        return Ok(false);
    }
    let Some(lead) = (0..n).find(|&a| residual[a * n + a] > 0) else {
        return Ok(residual.iter().all(|&x| x == 0));
    };
    // Candidate members: labels sharing a non-zero residual entry with `lead`.
    let members: Vec<usize> = (0..n).filter(|&b| b != lead && residual[lead * n + b] > 0).collect();
    let lead_max = isqrt(residual[lead * n + lead]);
    for lead_coef in (1..=lead_max).rev() {
        let mut coefs = vec![0i64; members.len()];
        if try_members(residual, n, lead, lead_coef, &members, &mut coefs, 0, blocks, nodes)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn try_members(
    residual: &mut [i64],
    n: usize,
    lead: usize,
    lead_coef: i64,
    members: &[usize],
    coefs: &mut [i64],
    pos: usize,
    blocks: &mut Vec<Block>,
    nodes: &mut usize,
) -> Result<bool> {
    if pos == members.len() {
        let mut support = vec![(lead, lead_coef)];
        support.extend(members.iter().zip(coefs.iter()).filter(|(_, &c)| c > 0).map(|(&b, &c)| (b, c)));
        for &(a, ca) in &support {
            for &(b, cb) in &support {
                residual[a * n + b] -= ca * cb;
            }
        }
        let ok = support.iter().all(|&(a, _)| {
            support.iter().all(|&(b, _)| residual[a * n + b] >= 0)
        });
        if ok {
            let mut block: Block = support.iter().map(|&(a, c)| (a, c as u32)).collect();
            block.sort();
            blocks.push(block);
            if factor(residual, n, blocks, nodes)? {
                return Ok(true);
            }
            blocks.pop();
        }
        for &(a, ca) in &support {
            for &(b, cb) in &support {
                residual[a * n + b] += ca * cb;
            }
        }
        return Ok(false);
    }
    let b = members[pos];
    let cap = isqrt(residual[b * n + b]).min(residual[lead * n + b] / lead_coef);
    for c in (0..=cap).rev() {
        // pairwise products with already chosen members must fit
        let fits = (0..pos).all(|i| coefs[i] * c <= residual[members[i] * n + b]);
        if !fits {
            continue;
        }
        coefs[pos] = c;
        if try_members(residual, n, lead, lead_coef, members, coefs, pos + 1, blocks, nodes)? {
            return Ok(true);
        }
    }
    coefs[pos] = 0;
    Ok(false)
}

/// Blocks of a type I minimal invariant written as Kac-label sums over the
/// canonical labels.
pub fn block_labels(m: u32, block: &Block) -> Vec<(MinimalLabel, u32)> {
    let labels = minimal_labels(m);
    block.iter().map(|&(i, c)| (labels[i], c)).collect()
}

/// Canonical index of a Kac label for minimal model `m`.
pub fn minimal_index(m: u32, p: u32, q: u32) -> Result<usize> {
    let l = canonical_label(m, p, q)?;
    minimal_labels(m)
        .iter()
        .position(|x| *x == l)
        .ok_or_else(|| domain(format!("({p},{q}) not found for m = {m}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::is_modular_invariant;
    use crate::modular_data::{minimal_data, su2_data};

    #[test]
    fn diagram_tables() {
        assert_eq!(diagrams_with_coxeter(12), vec![DynkinDiagram::a(11), DynkinDiagram::d(7), DynkinDiagram::e(6)]);
        assert_eq!(diagrams_with_coxeter(3), vec![DynkinDiagram::a(2)]);
        assert_eq!(diagrams_with_coxeter(30), vec![DynkinDiagram::a(29), DynkinDiagram::d(16), DynkinDiagram::e(8)]);
        assert_eq!(DynkinDiagram::d(4).exponents(), vec![1, 3, 3, 5]);
        assert_eq!(DynkinDiagram::d(5).exponents(), vec![1, 3, 4, 5, 7]);
        assert_eq!(DynkinDiagram::e(7).coxeter(), 18);
        assert!(DynkinDiagram::new(DynkinKind::E, 9).is_err());
        assert!(DynkinDiagram::new(DynkinKind::D, 2).is_err());
        for h in 2..=40 {
            for g in diagrams_with_coxeter(h) {
                let e = g.exponents();
                assert_eq!(e.len() as u32, g.rank);
                let mut mirrored: Vec<u32> = e.iter().map(|x| h - x).collect();
                mirrored.sort_unstable();
                assert_eq!(mirrored, e, "{g}");
            }
        }
    }

    #[test]
    fn counts_constants() {
        assert_eq!(DynkinDiagram::d(6).counts().as_array(), [6, 12, 6, 4]);
        assert_eq!(DynkinDiagram::d(7).counts().as_array(), [7, 11, 11, 11]);
        assert_eq!(DynkinDiagram::e(7).counts().as_array(), [7, 17, 10, 6]);
    }

    #[test]
    fn exceptional_vacuum_rows() {
        let z = su2_invariant(DynkinDiagram::e(6), 10).unwrap();
        assert_eq!(z.vacuum_row(), vec![(0, 1), (6, 1)]);
        let z = su2_invariant(DynkinDiagram::e(8), 28).unwrap();
        assert_eq!(z.vacuum_row(), vec![(0, 1), (10, 1), (18, 1), (28, 1)]);
        let z = su2_invariant(DynkinDiagram::a(5), 4).unwrap();
        assert_eq!(z, ModularInvariant::identity(Algebra::Su2 { level: 4 }, 5));
        assert!(su2_invariant(DynkinDiagram::e(6), 12).is_err());
        assert!(su2_invariant(DynkinDiagram::d(3), 2).is_err());
    }

    #[test]
    fn constructed_invariants_are_invariant() {
        for k in 1..=32 {
            let d = su2_data(k).unwrap();
            for g in diagrams_with_coxeter(k + 2).into_iter().filter(|g| g.constructible_at(k)) {
                let z = su2_invariant(g, k).unwrap();
                assert_eq!(is_modular_invariant(&d, &z).unwrap(), None, "{g} at k = {k}");
                assert_eq!(label_invariant(&z).unwrap(), InvariantLabel::Su2(g));
                assert_eq!(z.trace(), g.counts().ab);
                assert_eq!(z.trace_zzt(), g.counts().full);
            }
        }
    }

    #[test]
    fn a4_d4_doubled_entries() {
        let z = minimal_invariant(DynkinDiagram::a(4), DynkinDiagram::d(4), 5).unwrap();
        for p in [1, 2] {
            let i = minimal_index(5, p, 3).unwrap();
            assert_eq!(z.get(i, i), 2);
        }
        let id = minimal_invariant(DynkinDiagram::a(2), DynkinDiagram::a(3), 3).unwrap();
        assert_eq!(id, ModularInvariant::identity(Algebra::Minimal { m: 3 }, 3));
        assert!(minimal_invariant(DynkinDiagram::a(4), DynkinDiagram::a(4), 5).is_err());
    }

    #[test]
    fn a10_e6_diagonal_support() {
        let z = minimal_invariant(DynkinDiagram::a(10), DynkinDiagram::e(6), 11).unwrap();
        let d = minimal_data(11).unwrap();
        assert_eq!(is_modular_invariant(&d, &z).unwrap(), None);
        let labels = minimal_labels(11);
        let diag: Vec<MinimalLabel> = (0..labels.len()).filter(|&i| z.get(i, i) > 0).map(|i| labels[i]).collect();
        assert_eq!(diag.len(), 30);
        let exps = [1, 4, 5, 7, 8, 11];
        for l in diag {
            let p = l.partner(11);
            assert!(exps.contains(&l.q) || exps.contains(&p.q), "{l}");
        }
    }

    #[test]
    fn labels_of_minimal_invariants() {
        let d5 = minimal_invariant(DynkinDiagram::a(4), DynkinDiagram::d(4), 5).unwrap();
        assert_eq!(
            label_invariant(&d5).unwrap(),
            InvariantLabel::Minimal(DynkinDiagram::a(4), DynkinDiagram::d(4))
        );
        let id = ModularInvariant::identity(Algebra::Minimal { m: 5 }, 10);
        assert_eq!(
            label_invariant(&id).unwrap(),
            InvariantLabel::Minimal(DynkinDiagram::a(4), DynkinDiagram::a(5))
        );
        let e6 = su2_invariant(DynkinDiagram::e(6), 10).unwrap();
        assert_eq!(label_invariant(&e6).unwrap().to_string(), "E6");
    }

    #[test]
    fn labeling_rejects_unknown_diagonals() {
        let mut z = ModularInvariant::identity(Algebra::Su2 { level: 4 }, 5);
        z.set(1, 1, 0);
        assert!(matches!(label_invariant(&z), Err(Error::Labeling(_))));
    }

    #[test]
    fn type_i_decisions() {
        let z = minimal_invariant(DynkinDiagram::a(10), DynkinDiagram::e(6), 11).unwrap();
        assert_eq!(is_type_i(&z).unwrap().unwrap().len(), 15);
        let e7 = su2_invariant(DynkinDiagram::e(7), 16).unwrap();
        assert!(is_type_i(&e7).unwrap().is_none());
        let id = ModularInvariant::identity(Algebra::Su2 { level: 5 }, 6);
        let blocks = is_type_i(&id).unwrap().unwrap();
        assert_eq!(blocks, (0..6).map(|a| vec![(a, 1)]).collect::<Vec<_>>());
        let d4 = minimal_invariant(DynkinDiagram::a(4), DynkinDiagram::d(4), 5).unwrap();
        assert_eq!(is_type_i(&d4).unwrap().unwrap().len(), 6);
    }
}
