//! Finite posets stored through their Hasse diagrams.
//!
//! Elements are kept in lexicographic identifier order; an element's index is
//! its rank in that order. Every deterministic tie-break downstream (simplex
//! orientation, generator signs, matching search) follows this order.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Which interval around an element [`Poset::interval`] extracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    /// `{y : y <= x}`
    LowerClosed,
    /// `{y : y < x}`
    LowerOpen,
    /// `{y : x <= y}`
    UpperClosed,
    /// `{y : x < y}`
    UpperOpen,
    /// `{y : y < x or x < y}`, the join of the open lower and upper intervals.
    Link,
}

impl std::str::FromStr for IntervalKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lower_closed" => Ok(Self::LowerClosed),
            "lower_open" => Ok(Self::LowerOpen),
            "upper_closed" => Ok(Self::UpperClosed),
            "upper_open" => Ok(Self::UpperOpen),
            "link" => Ok(Self::Link),
            other => Err(format!("unknown interval kind `{other}`")),
        }
    }
}

/// Heights, gradedness and homogeneity of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub height_of: BTreeMap<String, usize>,
    /// Length of the longest chain; `0` for the empty poset.
    pub poset_height: usize,
    pub is_graded: bool,
    pub is_homogeneous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_of: Option<BTreeMap<String, usize>>,
}

/// A finite poset given by its cover relation, with a precomputed strict
/// order closure.
#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

pub(crate) fn validate_identifier(id: &str) -> Result<()> {
    if id.is_empty() || id.contains(['<', '#']) || id == "--" || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidIdentifier(id.to_string()));
    }
    Ok(())
}

impl Poset {
    /// Builds a poset from its elements and cover pairs `(x, y)` meaning `x ≺ y`.
    ///
    /// Transitively implied pairs are rejected rather than reduced.
    pub fn new<E, S, C, T>(elements: E, covers: C) -> Result<Self>
    where
        E: IntoIterator<Item = S>,
        S: AsRef<str>,
        C: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut names = Vec::new();
        for e in elements {
            let e = e.as_ref();
            validate_identifier(e)?;
            names.push(e.to_string());
        }
        let mut sorted = names.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0].clone()));
            }
        }
        let index: HashMap<String, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let n = sorted.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (x, y) in covers {
            let (x, y) = (x.as_ref(), y.as_ref());
            let xi = *index
                .get(x)
                .ok_or_else(|| Error::UnknownElement(x.to_string()))?;
            let yi = *index
                .get(y)
                .ok_or_else(|| Error::UnknownElement(y.to_string()))?;
            if xi == yi {
                return Err(Error::CoverCycle(x.to_string()));
            }
            if up[xi].contains(&yi) {
                return Err(Error::DuplicateCover(x.to_string(), y.to_string()));
            }
            up[xi].push(yi);
            down[yi].push(xi);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }
        let poset = Self::assemble(sorted, index, up, down)?;
        // A listed pair (x, y) is redundant when x already lies below another
        // lower cover of y.
        for y in 0..n {
            for &x in &poset.down[y] {
                if poset.down[y]
                    .iter()
                    .any(|&z| z != x && poset.below[z].contains(x))
                {
                    return Err(Error::RedundantCover(
                        poset.names[x].clone(),
                        poset.names[y].clone(),
                    ));
                }
            }
        }
        Ok(poset)
    }

    /// The empty poset.
    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            index: HashMap::new(),
            up: Vec::new(),
            down: Vec::new(),
            below: Vec::new(),
            above: Vec::new(),
        }
    }

    /// Computes the order closure; fails on cycles.
    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<Vec<usize>>,
        down: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = names.len();
        let order = topological_order(&up, &down).map_err(|i| Error::CoverCycle(names[i].clone()))?;
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &y in &order {
            let mut acc = FixedBitSet::with_capacity(n);
            for &x in &down[y] {
                acc.insert(x);
                acc.union_with(&below[x]);
            }
            below[y] = acc;
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (y, set) in below.iter().enumerate() {
            for x in set.ones() {
                above[x].insert(y);
            }
        }
        Ok(Self {
            names,
            index,
            up,
            down,
            below,
            above,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Element identifiers in index (lexicographic) order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Elements covering `i`, ascending.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Elements covered by `i`, ascending.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Strict down-set of `i`.
    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    /// Strict up-set of `i`.
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// `i < j` in the order.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.up[i].binary_search(&j).is_ok()
    }

    /// All cover pairs `(lower, upper)` ordered by lower then upper index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Cover pairs as identifier pairs.
    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// The induced subposet on `subset`, with covers recomputed inside it.
    pub fn induced(&self, subset: &FixedBitSet) -> Poset {
        let members: Vec<usize> = subset.ones().filter(|&i| i < self.len()).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
        let m = members.len();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        let mut inside = FixedBitSet::with_capacity(self.len());
        for (ky, &y) in members.iter().enumerate() {
            inside.clone_from(&self.below[y]);
            inside.intersect_with(subset);
            for x in inside.ones() {
                if self.above[x].intersection(&inside).next().is_none() {
                    down[ky].push(local[x]);
                    up[local[x]].push(ky);
                }
            }
        }
        for list in up.iter_mut() {
            list.sort_unstable();
        }
        let names: Vec<String> = members.iter().map(|&i| self.names[i].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Self::assemble(names, index, up, down).expect("subposet of a poset is acyclic")
    }

    /// Index set of an interval around element `i`.
    pub fn interval_set(&self, i: usize, kind: IntervalKind) -> FixedBitSet {
        let mut set = match kind {
            IntervalKind::LowerClosed | IntervalKind::LowerOpen => self.below[i].clone(),
            IntervalKind::UpperClosed | IntervalKind::UpperOpen => self.above[i].clone(),
            IntervalKind::Link => {
                let mut s = self.below[i].clone();
                s.union_with(&self.above[i]);
                s
            }
        };
        if matches!(kind, IntervalKind::LowerClosed | IntervalKind::UpperClosed) {
            set.insert(i);
        }
        set
    }

    /// `Û x`, `Ût x`, `F̂ x`, `F̂t x` or the link of `x`, as subposets.
    pub fn interval(&self, x: &str, kind: IntervalKind) -> Result<Poset> {
        let i = self.require(x)?;
        Ok(self.induced(&self.interval_set(i, kind)))
    }

    /// Longest chain length below each element.
    pub fn heights(&self) -> Vec<usize> {
        self.cover_path_lengths().1
    }

    /// Shortest and longest cover-path lengths from a minimal element.
    fn cover_path_lengths(&self) -> (Vec<usize>, Vec<usize>) {
        let order = topological_order(&self.up, &self.down).expect("poset is acyclic");
        let n = self.len();
        let mut shortest = vec![0usize; n];
        let mut longest = vec![0usize; n];
        for &y in &order {
            if let Some(lo) = self.down[y].iter().map(|&x| shortest[x] + 1).min() {
                shortest[y] = lo;
                longest[y] = self.down[y].iter().map(|&x| longest[x] + 1).max().unwrap_or(0);
            }
        }
        (shortest, longest)
    }

    /// Degrees (heights) of a graded poset.
    pub fn degrees(&self) -> Result<Vec<usize>> {
        let (shortest, longest) = self.cover_path_lengths();
        if shortest != longest {
            return Err(Error::NotGraded);
        }
        Ok(longest)
    }

    pub fn is_graded(&self) -> bool {
        let (shortest, longest) = self.cover_path_lengths();
        shortest == longest
    }

    /// Height of the poset: the length of its longest chain.
    pub fn height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    pub fn grading_info(&self) -> GradingReport {
        let (shortest, longest) = self.cover_path_lengths();
        let poset_height = longest.iter().copied().max().unwrap_or(0);
        // Maximal chains run along covers from a minimal to a maximal
        // element, so Û x is homogeneous iff both path lengths agree at x.
        let is_graded = shortest == longest;
        let is_homogeneous = is_graded
            && self
                .maximal_elements()
                .into_iter()
                .all(|i| longest[i] == poset_height);
        let height_of: BTreeMap<String, usize> = self
            .names
            .iter()
            .cloned()
            .zip(longest.iter().copied())
            .collect();
        GradingReport {
            degree_of: is_graded.then(|| height_of.clone()),
            height_of,
            poset_height,
            is_graded,
            is_homogeneous,
        }
    }

    /// `X ⊛ Y`: disjoint union with every element of `self` below every
    /// element of `other`.
    pub fn join(&self, other: &Poset) -> Result<Poset> {
        let elements = self.names.iter().chain(other.names.iter());
        let mut covers = self.cover_names();
        covers.extend(other.cover_names());
        for x in self.maximal_elements() {
            for y in other.minimal_elements() {
                covers.push((self.names[x].clone(), other.names[y].clone()));
            }
        }
        Poset::new(elements, covers)
    }

    /// `X ⊛ {apex}`.
    pub fn cone(&self, apex: &str) -> Result<Poset> {
        self.join(&Poset::new([apex], Vec::<(&str, &str)>::new())?)
    }

    /// The opposite order.
    pub fn opposite(&self) -> Poset {
        Self {
            names: self.names.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            below: self.above.clone(),
            above: self.below.clone(),
        }
    }

    /// `X^p`: elements of degree at most `p`.
    pub fn skeleton(&self, p: usize) -> Result<Poset> {
        let degrees = self.degrees()?;
        let mut keep = FixedBitSet::with_capacity(self.len());
        for (i, &d) in degrees.iter().enumerate() {
            if d <= p {
                keep.insert(i);
            }
        }
        Ok(self.induced(&keep))
    }

    /// Repeatedly deletes the smallest beat point until none remain.
    ///
    /// An up beat point has exactly one upper cover (its strict up-set has a
    /// minimum); a down beat point has exactly one lower cover.
    pub fn beat_point_reduce(&self) -> Poset {
        let mut current = self.clone();
        loop {
            let beat = (0..current.len())
                .find(|&i| current.up[i].len() == 1 || current.down[i].len() == 1);
            match beat {
                Some(i) => {
                    let mut keep = FixedBitSet::with_capacity(current.len());
                    keep.insert_range(..);
                    keep.set(i, false);
                    current = current.induced(&keep);
                }
                None => return current,
            }
        }
    }
}

/// Kahn's algorithm from minimal elements upward; on a cycle returns an
/// element on or above it.
fn topological_order(up: &[Vec<usize>], down: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let n = up.len();
    let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &up[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() < n {
        return Err((0..n).find(|&i| indegree[i] > 0).unwrap_or(0));
    }
    Ok(order)
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &self.cover_names())
            .finish()
    }
}
