//! Partitions, bipartitions, standard and semistandard tableaux, dominance,
//! and Bratteli diagrams for the tower of algebras.
//!
//! Cells carry a component (0 or 1, selecting the parameter `k1` or `k2`),
//! a row, and a column, all 0-based internally. The content of a cell in
//! component `l` is `k_{l+1} + col - row`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Scalar, ScalarMode};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates weak decrease; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse(alloc::format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn row_len(&self, r: usize) -> u32 {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn contains(&self, row: usize, col: u32) -> bool {
        col < self.row_len(row)
    }

    pub fn conjugate(&self) -> Self {
        let mut parts = Vec::new();
        let mut c = 0u32;
        loop {
            let h = self.parts.iter().filter(|&&p| p > c).count() as u32;
            if h == 0 {
                break;
            }
            parts.push(h);
            c += 1;
        }
        Partition { parts }
    }

    /// `(row, col)` cells where a box may be added.
    pub fn addable(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for r in 0..=self.parts.len() {
            let len = self.row_len(r);
            if r == 0 || self.row_len(r - 1) > len {
                out.push((r, len));
            }
        }
        out
    }

    pub fn with_box(&self, row: usize, col: u32) -> Result<Self> {
        let mut parts = self.parts.clone();
        if row > parts.len() {
            return Err(Error::ShapeMismatch);
        }
        if row == parts.len() {
            parts.push(0);
        }
        if parts[row] != col {
            return Err(Error::ShapeMismatch);
        }
        parts[row] += 1;
        Self::new(parts)
    }

    /// Standard tableau count via the hook length formula.
    pub fn std_count(&self) -> u64 {
        let n = self.size() as u128;
        let mut num: u128 = 1;
        for i in 1..=n {
            num *= i;
        }
        let conj = self.conjugate();
        let mut den: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let arm = len - c;
                let leg = conj.row_len(c as usize) - r as u32 - 1;
                den *= (arm + leg) as u128;
            }
        }
        (num / den) as u64
    }

    /// Text form `[3,1,1]` (empty: `[]`).
    pub fn to_text(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        alloc::format!("[{}]", inner.join(","))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|u| u.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(alloc::format!("bad partition {t:?}")))?;
        if body.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts: Result<Vec<u32>> = body
            .split(',')
            .map(|p| {
                p.trim().parse().map_err(|_| Error::Parse(alloc::format!("bad part {p:?}")))
            })
            .collect();
        Self::new(parts?)
    }
}

/// All partitions of `p`, largest-first part order, deterministic.
pub fn enumerate_partitions(p: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(remaining: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let top = remaining.min(max);
        for next in (1..=top).rev() {
            cur.push(next as u32);
            rec(remaining - next, next, cur, out);
            cur.pop();
        }
    }
    rec(p, p, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Bipartitions
// ---------------------------------------------------------------------------

/// An ordered pair of partitions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn empty() -> Self {
        Bipartition { first: Partition::empty(), second: Partition::empty() }
    }

    pub fn size(&self) -> usize {
        self.first.size() + self.second.size()
    }

    pub fn component(&self, comp: u8) -> &Partition {
        if comp == 0 {
            &self.first
        } else {
            &self.second
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.component(cell.comp).contains(cell.row as usize, cell.col)
    }

    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for comp in 0..2u8 {
            for (row, col) in self.component(comp).addable() {
                out.push(Cell { comp, row: row as u32, col });
            }
        }
        out
    }

    pub fn with_box(&self, cell: Cell) -> Result<Self> {
        let mut out = self.clone();
        let p = out.component(cell.comp).with_box(cell.row as usize, cell.col)?;
        if cell.comp == 0 {
            out.first = p;
        } else {
            out.second = p;
        }
        Ok(out)
    }

    /// Cumulative box counts driving the dominance order: partial sums of
    /// the first component, then the first component's total plus partial
    /// sums of the second, both padded out to `n` rows.
    pub fn dominance_profile(&self, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(2 * n);
        let mut acc = 0u64;
        for i in 0..n {
            acc += self.first.row_len(i) as u64;
            out.push(acc);
        }
        let total1 = self.first.size() as u64;
        let mut acc2 = total1;
        for i in 0..n {
            acc2 += self.second.row_len(i) as u64;
            out.push(acc2);
        }
        out
    }

    /// The dominance order (reflexive).
    pub fn dominates(&self, other: &Self) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let n = self.size().max(1);
        let a = self.dominance_profile(n);
        let b = other.dominance_profile(n);
        a.iter().zip(&b).all(|(x, y)| x >= y)
    }

    /// Standard tableau count: choose which entries land in the first
    /// component, then fill each component independently.
    pub fn std_count(&self) -> u64 {
        let n = self.size();
        let a = self.first.size();
        (binomial(n, a) * self.first.std_count() as u128 * self.second.std_count() as u128) as u64
    }

    /// Text form `([3,1,1],[2,2,1])`.
    pub fn to_text(&self) -> String {
        alloc::format!("({},{})", self.first.to_text(), self.second.to_text())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(alloc::format!("bad bipartition {t:?}")))?;
        let close = body
            .find(']')
            .ok_or_else(|| Error::Parse(alloc::format!("bad bipartition {t:?}")))?;
        let first = Partition::parse(&body[..=close])?;
        let rest = body[close + 1..]
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse(alloc::format!("bad bipartition {t:?}")))?;
        let second = Partition::parse(rest)?;
        Ok(Bipartition::new(first, second))
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// All bipartitions of `n`, in descending dominance-profile order.
pub fn enumerate_bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for p1 in enumerate_partitions(a) {
            for p2 in enumerate_partitions(n - a) {
                out.push(Bipartition::new(p1.clone(), p2));
            }
        }
    }
    out.sort_by(|x, y| y.dominance_profile(n).cmp(&x.dominance_profile(n)));
    out
}

/// A box position: component (0 selects `k1`, 1 selects `k2`), row, column,
/// all 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub comp: u8,
    pub row: u32,
    pub col: u32,
}

impl Cell {
    /// `col - row`, the parameter-free part of the content.
    pub fn offset(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

// ---------------------------------------------------------------------------
// Standard bitableaux
// ---------------------------------------------------------------------------

/// Comparison outcome under the dominance order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomRel {
    Equal,
    Greater,
    Less,
    Incomparable,
}

/// A standard filling of a bipartition: entries `1..=n`, strictly increasing
/// along rows and columns in each component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StdBiTableau {
    shape: Bipartition,
    /// `pos[i-1]` is the cell holding the entry `i`.
    pos: Vec<Cell>,
}

impl StdBiTableau {
    pub fn new(shape: Bipartition, pos: Vec<Cell>) -> Result<Self> {
        let t = StdBiTableau { shape, pos };
        if !t.is_valid() {
            return Err(Error::ShapeMismatch);
        }
        Ok(t)
    }

    fn is_valid(&self) -> bool {
        if self.pos.len() != self.shape.size() {
            return false;
        }
        let mut entry = alloc::collections::BTreeMap::new();
        for (i, &c) in self.pos.iter().enumerate() {
            if !self.shape.contains(c) || entry.insert(c, i as u32 + 1).is_some() {
                return false;
            }
        }
        // Strict increase along rows and columns.
        for (&c, &e) in &entry {
            if c.col > 0 {
                let left = Cell { col: c.col - 1, ..c };
                if entry[&left] > e {
                    return false;
                }
            }
            if c.row > 0 {
                let up = Cell { row: c.row - 1, ..c };
                if entry[&up] > e {
                    return false;
                }
            }
        }
        true
    }

    pub fn shape(&self) -> &Bipartition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// Cell of the entry `i` (`1..=n`).
    pub fn cell_of(&self, i: usize) -> Result<Cell> {
        self.pos.get(i - 1).copied().ok_or(Error::IndexOutOfRange)
    }

    /// Shape of the subtableau holding `1..=m`.
    pub fn restriction(&self, m: usize) -> Bipartition {
        let mut shape = Bipartition::empty();
        for &c in self.pos.iter().take(m) {
            shape = shape.with_box(c).expect("prefix of a standard tableau grows by boxes");
        }
        shape
    }

    /// Content of the entry `i`: `k_{l+1} + col - row`.
    pub fn content(&self, i: usize, mode: &ScalarMode) -> Result<Scalar> {
        let c = self.cell_of(i)?;
        let kappa = mode.kappa(c.comp as usize + 1);
        Ok(kappa.add(&mode.from_rational(rat_int(c.offset()))))
    }

    /// Axial distance `c_i - c_{i+1}`.
    pub fn axial_distance(&self, i: usize, mode: &ScalarMode) -> Result<Scalar> {
        if i + 1 > self.n() {
            return Err(Error::IndexOutOfRange);
        }
        Ok(self.content(i, mode)?.sub(&self.content(i + 1, mode)?))
    }

    /// Exchanges the entries `r` and `r+1`; `None` when the result is not
    /// standard.
    pub fn swap_entries(&self, r: usize) -> Option<StdBiTableau> {
        if r < 1 || r >= self.n() {
            return None;
        }
        let mut pos = self.pos.clone();
        pos.swap(r - 1, r);
        let t = StdBiTableau { shape: self.shape.clone(), pos };
        if t.is_valid() {
            Some(t)
        } else {
            None
        }
    }

    /// Dominance comparison via restriction shapes at every level.
    pub fn dominance(&self, other: &Self) -> Result<DomRel> {
        if self.n() != other.n() {
            return Err(Error::ShapeMismatch);
        }
        if self == other {
            return Ok(DomRel::Equal);
        }
        let mut ge = true;
        let mut le = true;
        for m in 1..=self.n() {
            let a = self.restriction(m);
            let b = other.restriction(m);
            if !a.dominates(&b) {
                ge = false;
            }
            if !b.dominates(&a) {
                le = false;
            }
        }
        Ok(match (ge, le) {
            (true, true) => DomRel::Equal,
            (true, false) => DomRel::Greater,
            (false, true) => DomRel::Less,
            (false, false) => DomRel::Incomparable,
        })
    }

    /// Row-reading filling: first component row by row, then the second.
    pub fn superstandard(shape: &Bipartition) -> Self {
        let mut pos = Vec::with_capacity(shape.size());
        for comp in 0..2u8 {
            let p = shape.component(comp);
            for (r, &len) in p.parts().iter().enumerate() {
                for c in 0..len {
                    pos.push(Cell { comp, row: r as u32, col: c });
                }
            }
        }
        StdBiTableau { shape: shape.clone(), pos }
    }

    /// Text form listing each component's rows of entries, e.g.
    /// `(([1,3,4],[2,5],[6]),([7,8],[9]))`.
    pub fn to_text(&self) -> String {
        let comp_text = |comp: u8| {
            let p = self.shape.component(comp);
            let mut rows: Vec<Vec<u32>> =
                p.parts().iter().map(|&len| vec![0; len as usize]).collect();
            for (i, &c) in self.pos.iter().enumerate() {
                if c.comp == comp {
                    rows[c.row as usize][c.col as usize] = i as u32 + 1;
                }
            }
            let inner: Vec<String> = rows
                .iter()
                .map(|row| {
                    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    alloc::format!("[{}]", cells.join(","))
                })
                .collect();
            alloc::format!("({})", inner.join(","))
        };
        alloc::format!("({},{})", comp_text(0), comp_text(1))
    }
}

/// All standard fillings of `shape`, deterministic order.
pub fn enumerate_std(shape: &Bipartition) -> Vec<StdBiTableau> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut pos: Vec<Cell> = Vec::with_capacity(n);
    fn rec(
        shape: &Bipartition,
        cur: &Bipartition,
        pos: &mut Vec<Cell>,
        out: &mut Vec<StdBiTableau>,
    ) {
        if pos.len() == shape.size() {
            out.push(StdBiTableau { shape: shape.clone(), pos: pos.clone() });
            return;
        }
        for cell in cur.addable_cells() {
            if shape.contains(cell) {
                let next = cur.with_box(cell).expect("addable cell");
                pos.push(cell);
                rec(shape, &next, pos, out);
                pos.pop();
            }
        }
    }
    rec(shape, &Bipartition::empty(), &mut pos, &mut out);
    // Canonical order: sort by the chain of restriction shapes from level
    // n-1 down to 1, most dominant chain first. Tableaux whose large entries
    // sit in dominant positions come first; the row-reading tableau leads.
    out.sort_by_cached_key(|t| {
        let key: Vec<Vec<u64>> = (1..n)
            .rev()
            .map(|m| {
                let mut p = t.restriction(m).dominance_profile(n);
                for v in p.iter_mut() {
                    *v = u64::MAX - *v;
                }
                p
            })
            .collect();
        key
    });
    out
}

// ---------------------------------------------------------------------------
// Bratteli diagrams
// ---------------------------------------------------------------------------

/// Vertex filters for the Bratteli diagram of the tower.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BratteliFilter {
    /// All bipartitions.
    Full,
    /// Second component has at most one row.
    SecondRowFree,
    /// Second component has at most one row and the first component's first
    /// row is at most `k`.
    SecondRowFreeAndCap(usize),
}

impl BratteliFilter {
    pub fn admits(&self, b: &Bipartition) -> bool {
        match *self {
            BratteliFilter::Full => true,
            BratteliFilter::SecondRowFree => b.second.rows() <= 1,
            BratteliFilter::SecondRowFreeAndCap(k) => {
                b.second.rows() <= 1 && b.first.first_part() as usize <= k
            }
        }
    }
}

/// A truncated Bratteli diagram: filtered bipartitions level by level,
/// single-box edges, and path counts.
#[derive(Clone, Debug)]
pub struct Bratteli {
    pub filter: BratteliFilter,
    /// `levels[m]` lists the admitted bipartitions of size `m`.
    pub levels: Vec<Vec<Bipartition>>,
    /// `edges[m]` joins level `m` vertices to level `m+1` vertices by index.
    pub edges: Vec<Vec<(usize, usize)>>,
    /// `dims[m][i]`: number of admitted paths from the root to vertex `i`.
    pub dims: Vec<Vec<u64>>,
}

impl Bratteli {
    pub fn build(levels: usize, filter: BratteliFilter) -> Self {
        let mut level_sets: Vec<Vec<Bipartition>> = Vec::with_capacity(levels + 1);
        for m in 0..=levels {
            let set: Vec<Bipartition> =
                enumerate_bipartitions(m).into_iter().filter(|b| filter.admits(b)).collect();
            level_sets.push(set);
        }
        let mut edges = Vec::with_capacity(levels);
        let mut dims: Vec<Vec<u64>> = Vec::with_capacity(levels + 1);
        dims.push(vec![1; level_sets[0].len()]);
        for m in 0..levels {
            let mut es = Vec::new();
            let mut next_dims = vec![0u64; level_sets[m + 1].len()];
            for (i, parent) in level_sets[m].iter().enumerate() {
                for cell in parent.addable_cells() {
                    let child = parent.with_box(cell).expect("addable cell");
                    if let Some(j) = level_sets[m + 1].iter().position(|b| *b == child) {
                        es.push((i, j));
                        next_dims[j] += dims[m][i];
                    }
                }
            }
            es.sort_unstable();
            edges.push(es);
            dims.push(next_dims);
        }
        Bratteli { filter, levels: level_sets, edges, dims }
    }

    /// Sum of squared path counts per level.
    pub fn level_dims(&self) -> Vec<u64> {
        self.dims.iter().map(|ds| ds.iter().map(|d| d * d).sum()).collect()
    }

    /// Deterministic DOT rendering; vertex labels carry the shape and its
    /// path count, the graph label carries the per-level dimension sums.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph bratteli {\n");
        out.push_str("  rankdir=TB;\n");
        out.push_str("  node [shape=box];\n");
        for (m, set) in self.levels.iter().enumerate() {
            for (i, b) in set.iter().enumerate() {
                out.push_str(&alloc::format!(
                    "  v{}_{} [label=\"{} d={}\"];\n",
                    m,
                    i,
                    b.to_text(),
                    self.dims[m][i]
                ));
            }
            out.push_str(&alloc::format!("  {{ rank=same;"));
            for i in 0..set.len() {
                out.push_str(&alloc::format!(" v{m}_{i};"));
            }
            out.push_str(" }\n");
        }
        for (m, es) in self.edges.iter().enumerate() {
            for &(i, j) in es {
                out.push_str(&alloc::format!("  v{}_{} -> v{}_{};\n", m, i, m + 1, j));
            }
        }
        let dims: Vec<String> = self.level_dims().iter().map(|d| d.to_string()).collect();
        out.push_str(&alloc::format!("  label=\"level dims: {}\";\n", dims.join(", ")));
        out.push_str("}\n");
        out
    }
}

// ---------------------------------------------------------------------------
// Semistandard tableaux of weight (k,1,..,1) and the quotient bijection
// ---------------------------------------------------------------------------

/// A semistandard tableau of shape `λ ⊢ k+n` and weight `(k,1,..,1)`:
/// the entry 1 appears `k` times, each of `2..=n+1` once; rows weakly
/// increase, columns strictly increase.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SemiStdTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
    k: usize,
}

impl SemiStdTableau {
    pub fn new(shape: Partition, rows: Vec<Vec<u32>>, k: usize) -> Result<Self> {
        let t = SemiStdTableau { shape, rows, k };
        if !t.is_valid() {
            return Err(Error::ShapeMismatch);
        }
        Ok(t)
    }

    fn is_valid(&self) -> bool {
        let total = self.shape.size();
        if total < self.k {
            return false;
        }
        let n = total - self.k;
        if self.rows.len() != self.shape.rows() {
            return false;
        }
        let mut counts = vec![0usize; n + 2];
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape.row_len(r) as usize {
                return false;
            }
            for (c, &e) in row.iter().enumerate() {
                if e < 1 || e as usize > n + 1 {
                    return false;
                }
                counts[e as usize] += 1;
                if c > 0 && row[c - 1] > e {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return false;
                }
            }
        }
        counts[1] == self.k && counts[2..].iter().all(|&c| c == 1)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.shape.size() - self.k
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Text form listing rows, e.g. `([1,1,1,2],[3])`.
    pub fn to_text(&self) -> String {
        let inner: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                alloc::format!("[{}]", cells.join(","))
            })
            .collect();
        alloc::format!("({})", inner.join(","))
    }
}

/// All semistandard tableaux of shape `λ` (of size `k+n`) and weight
/// `(k,1,..,1)`. Size below `k` is an error; an unfillable shape yields an
/// empty list.
pub fn enumerate_sstab(shape: &Partition, k: usize) -> Result<Vec<SemiStdTableau>> {
    if shape.size() < k {
        return Err(Error::SizeMismatch);
    }
    // All copies of 1 must occupy the first k boxes of the first row.
    if (shape.first_part() as usize) < k {
        return Ok(Vec::new());
    }
    // Fill the remaining cells with 2..=n+1, each once: equivalent to a
    // standard filling of the skew shape (rows strict as entries differ).
    let mut cells: Vec<(usize, u32)> = Vec::new();
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            if r == 0 && (c as usize) < k {
                continue;
            }
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<u32>> =
        shape.parts().iter().map(|&len| vec![0; len as usize]).collect();
    for c in 0..k.min(shape.first_part() as usize) {
        grid[0][c] = 1;
    }
    let mut out = Vec::new();
    fn rec(
        shape: &Partition,
        k: usize,
        cells: &[(usize, u32)],
        next: u32,
        grid: &mut Vec<Vec<u32>>,
        out: &mut Vec<SemiStdTableau>,
    ) {
        if cells.iter().all(|&(r, c)| grid[r][c as usize] != 0) {
            out.push(SemiStdTableau { shape: shape.clone(), rows: grid.clone(), k });
            return;
        }
        for &(r, c) in cells {
            if grid[r][c as usize] != 0 {
                continue;
            }
            let left_ok = c == 0 || grid[r][c as usize - 1] != 0;
            let up_ok = r == 0 || grid[r - 1][c as usize] != 0;
            if left_ok && up_ok {
                grid[r][c as usize] = next;
                rec(shape, k, cells, next + 1, grid, out);
                grid[r][c as usize] = 0;
            }
        }
    }
    rec(shape, k, &cells, 2, &mut grid, &mut out);
    out.sort();
    Ok(out)
}

/// Shape map of the quotient bijection: `(k+a, λ2, ..) -> ((λ2, ..), (a))`.
pub fn phi_shape(shape: &Partition, k: usize) -> Result<Bipartition> {
    if (shape.first_part() as usize) < k {
        return Err(Error::ShapeMismatch);
    }
    let a = shape.first_part() as usize - k;
    let rest = Partition::new(shape.parts()[1..].to_vec())?;
    let second = if a == 0 { Partition::empty() } else { Partition::new(vec![a as u32])? };
    Ok(Bipartition::new(rest, second))
}

/// Tableau map of the quotient bijection: decrease entries by one; rows
/// after the first become the first component, the first-row boxes past
/// column `k` become the (single-row) second component. Total on valid
/// inputs; only the inverse direction needs `n <= k`.
pub fn phi_bijection(t: &SemiStdTableau, k: usize) -> Result<StdBiTableau> {
    if t.k() != k {
        return Err(Error::ShapeMismatch);
    }
    let shape = phi_shape(t.shape(), k)?;
    let n = t.n();
    let mut pos = vec![Cell { comp: 0, row: 0, col: 0 }; n];
    for (r, row) in t.rows().iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            if e == 1 {
                continue;
            }
            let entry = (e - 1) as usize;
            let cell = if r == 0 {
                Cell { comp: 1, row: 0, col: (c - k) as u32 }
            } else {
                Cell { comp: 0, row: (r - 1) as u32, col: c as u32 }
            };
            pos[entry - 1] = cell;
        }
    }
    StdBiTableau::new(shape, pos)
}

/// Inverse of [`phi_bijection`]: increase entries by one and prepend `k`
/// copies of 1 to the first row. The second component must have at most one
/// row.
pub fn psi_bijection(t: &StdBiTableau, k: usize) -> Result<SemiStdTableau> {
    let n = t.n();
    if n > k {
        return Err(Error::HypothesisViolated);
    }
    if t.shape().second.rows() > 1 {
        return Err(Error::ShapeMismatch);
    }
    let a = t.shape().second.first_part() as usize;
    let mut parts = vec![(k + a) as u32];
    parts.extend_from_slice(t.shape().first.parts());
    let shape = Partition::new(parts).map_err(|_| Error::ShapeMismatch)?;
    let mut rows: Vec<Vec<u32>> =
        shape.parts().iter().map(|&len| vec![0; len as usize]).collect();
    for c in 0..k {
        rows[0][c] = 1;
    }
    for i in 1..=n {
        let cell = t.cell_of(i)?;
        if cell.comp == 1 {
            rows[0][k + cell.col as usize] = i as u32 + 1;
        } else {
            rows[cell.row as usize + 1][cell.col as usize] = i as u32 + 1;
        }
    }
    SemiStdTableau::new(shape, rows, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(s: &str) -> Bipartition {
        Bipartition::parse(s).unwrap()
    }

    #[test]
    fn partition_text_round_trip() {
        for s in ["[]", "[3,1,1]", "[2,2]"] {
            assert_eq!(Partition::parse(s).unwrap().to_text(), s);
        }
        assert!(Partition::parse("[1,3]").is_err());
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(enumerate_bipartitions(0).len(), 1);
        assert_eq!(enumerate_bipartitions(2).len(), 5);
        assert_eq!(enumerate_bipartitions(3).len(), 10);
    }

    #[test]
    fn std_counts_match_enumeration() {
        for n in 0..=4 {
            for b in enumerate_bipartitions(n) {
                assert_eq!(enumerate_std(&b).len() as u64, b.std_count(), "{}", b.to_text());
            }
        }
    }

    #[test]
    fn wedderburn_count() {
        for n in 0..=5usize {
            let total: u64 = enumerate_bipartitions(n)
                .iter()
                .map(|b| {
                    let d = b.std_count();
                    d * d
                })
                .sum();
            let expect = (1..=n as u64).product::<u64>() << n;
            assert_eq!(total, expect);
        }
    }

    #[test]
    fn incomparable_tableaux() {
        // Shapes ((3,2,1),(2,1)) and ((2,2),(2,2,1)): the specific fillings
        // below disagree at levels 2 and 4.
        let s = StdBiTableau::new(
            bip("([3,2,1],[2,1])"),
            vec![
                Cell { comp: 0, row: 0, col: 0 },
                Cell { comp: 0, row: 1, col: 0 },
                Cell { comp: 0, row: 0, col: 1 },
                Cell { comp: 0, row: 0, col: 2 },
                Cell { comp: 0, row: 1, col: 1 },
                Cell { comp: 0, row: 2, col: 0 },
                Cell { comp: 1, row: 0, col: 0 },
                Cell { comp: 1, row: 0, col: 1 },
                Cell { comp: 1, row: 1, col: 0 },
            ],
        )
        .unwrap();
        let t = StdBiTableau::new(
            bip("([2,2],[2,2,1])"),
            vec![
                Cell { comp: 0, row: 0, col: 0 },
                Cell { comp: 0, row: 0, col: 1 },
                Cell { comp: 0, row: 1, col: 0 },
                Cell { comp: 0, row: 1, col: 1 },
                Cell { comp: 1, row: 0, col: 0 },
                Cell { comp: 1, row: 0, col: 1 },
                Cell { comp: 1, row: 1, col: 0 },
                Cell { comp: 1, row: 1, col: 1 },
                Cell { comp: 1, row: 2, col: 0 },
            ],
        )
        .unwrap();
        assert_eq!(s.dominance(&t).unwrap(), DomRel::Incomparable);
    }

    #[test]
    fn sstab_example() {
        let shape = Partition::parse("[4,1]").unwrap();
        let ts = enumerate_sstab(&shape, 3).unwrap();
        assert_eq!(ts.len(), 2);
    }

    #[test]
    fn phi_worked_example() {
        let shape = Partition::parse("[5,2,1]").unwrap();
        let t = SemiStdTableau::new(
            shape,
            vec![vec![1, 1, 1, 2, 3], vec![4, 5], vec![6]],
            3,
        )
        .unwrap();
        let image = phi_bijection(&t, 3).unwrap();
        assert_eq!(image.shape().to_text(), "([2,1],[2])");
        assert_eq!(image.to_text(), "(([3,4],[5]),([1,2]))");
        // The inverse direction needs n <= k; here n = 5 > 3.
        assert_eq!(psi_bijection(&image, 3), Err(Error::HypothesisViolated));
    }

    #[test]
    fn phi_psi_round_trip_small() {
        let shape = Partition::parse("[4,1]").unwrap();
        for t in enumerate_sstab(&shape, 3).unwrap() {
            let image = phi_bijection(&t, 3).unwrap();
            assert_eq!(psi_bijection(&image, 3).unwrap(), t);
        }
    }

    #[test]
    fn bratteli_filtered_dims() {
        let b = Bratteli::build(3, BratteliFilter::SecondRowFree);
        assert_eq!(b.level_dims(), vec![1, 2, 7, 34]);
        let counts: Vec<usize> = b.levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 7]);
        let full = Bratteli::build(2, BratteliFilter::Full);
        assert_eq!(full.levels[2].len(), 5);
        assert_eq!(full.edges[1].len(), 6);
    }
}
