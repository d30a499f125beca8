//! Labelled trees rooted at the smallest label, stored as father maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("label set must not be empty")]
    EmptyLabels,
    #[error("label {0} is not positive")]
    NonPositiveLabel(u32),
    #[error("label {0} appears more than once")]
    DuplicateLabel(u32),
    #[error("vertex {0} is not a label of the tree")]
    UnknownVertex(u32),
    #[error("root {0} must not have a father")]
    RootHasFather(u32),
    #[error("vertex {0} has no father")]
    MissingFather(u32),
    #[error("father map contains a cycle through {0}")]
    Cycle(u32),
    #[error("Pruefer sequence must have length {expected}, got {got}")]
    PrueferLength { expected: usize, got: usize },
}

/// A finite non-empty set of positive labels, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(Vec<u32>);

impl LabelSet {
    /// Accepts labels in any order; rejects duplicates, zero and the empty set.
    pub fn new(labels: impl IntoIterator<Item = u32>) -> Result<Self, TreeError> {
        let mut v: Vec<u32> = labels.into_iter().collect();
        if v.is_empty() {
            return Err(TreeError::EmptyLabels);
        }
        v.sort_unstable();
        if v[0] == 0 {
            return Err(TreeError::NonPositiveLabel(0));
        }
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateLabel(w[0]));
        }
        Ok(LabelSet(v))
    }

    /// `{1, ..., n}`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn range(n: u32) -> Self {
        assert!(n >= 1, "empty label range");
        LabelSet((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_label(&self) -> u32 {
        self.0[0]
    }

    pub fn max_label(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn index_of(&self, v: u32) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u32> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Root,
    /// father label is smaller
    Increasing,
    /// father label is larger
    Decreasing,
}

/// Labelled tree on a [`LabelSet`] rooted at its minimum.
///
/// Ordering and equality compare the father map (sorted by child label),
/// so trees can live in ordered sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    labels: LabelSet,
    father: BTreeMap<u32, u32>,
}

impl RootedTree {
    /// Validates that `father` covers exactly the non-root labels and that
    /// every vertex reaches the root.
    pub fn new(labels: LabelSet, father: BTreeMap<u32, u32>) -> Result<Self, TreeError> {
        let root = labels.min_label();
        if father.contains_key(&root) {
            return Err(TreeError::RootHasFather(root));
        }
        for (&c, &f) in &father {
            if !labels.contains(c) {
                return Err(TreeError::UnknownVertex(c));
            }
            if !labels.contains(f) {
                return Err(TreeError::UnknownVertex(f));
            }
        }
        if let Some(v) = labels
            .iter()
            .find(|&v| v != root && !father.contains_key(&v))
        {
            return Err(TreeError::MissingFather(v));
        }
        let n = labels.len();
        for v in labels.iter() {
            let mut cur = v;
            let mut steps = 0;
            while cur != root {
                cur = father[&cur];
                steps += 1;
                if steps >= n {
                    return Err(TreeError::Cycle(v));
                }
            }
        }
        Ok(RootedTree { labels, father })
    }

    pub(crate) fn from_parts_unchecked(labels: LabelSet, father: BTreeMap<u32, u32>) -> Self {
        debug_assert!(RootedTree::new(labels.clone(), father.clone()).is_ok());
        RootedTree { labels, father }
    }

    /// The tree on a single vertex.
    pub fn singleton(v: u32) -> Result<Self, TreeError> {
        RootedTree::new(LabelSet::new([v])?, BTreeMap::new())
    }

    /// Builds a tree from `(child, father)` pairs; the label set is every
    /// label mentioned.
    pub fn from_edges(edges: &[(u32, u32)]) -> Result<Self, TreeError> {
        let labels = LabelSet::new(
            edges
                .iter()
                .flat_map(|&(c, f)| [c, f])
                .collect::<BTreeSet<_>>(),
        )?;
        let mut father = BTreeMap::new();
        for &(c, f) in edges {
            if father.insert(c, f).is_some() {
                return Err(TreeError::DuplicateLabel(c));
            }
        }
        RootedTree::new(labels, father)
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn root(&self) -> u32 {
        self.labels.min_label()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Father map sorted by child.
    pub fn father_map(&self) -> &BTreeMap<u32, u32> {
        &self.father
    }

    pub fn father(&self, v: u32) -> Option<u32> {
        self.father.get(&v).copied()
    }

    fn check_vertex(&self, v: u32) -> Result<(), TreeError> {
        if self.labels.contains(v) {
            Ok(())
        } else {
            Err(TreeError::UnknownVertex(v))
        }
    }

    pub fn children(&self, v: u32) -> Vec<u32> {
        self.father
            .iter()
            .filter(|&(_, &f)| f == v)
            .map(|(&c, _)| c)
            .collect()
    }

    /// Path from `v` up to and including the root.
    pub fn path_to_root(&self, v: u32) -> Vec<u32> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(f) = self.father(cur) {
            path.push(f);
            cur = f;
        }
        path
    }

    pub fn depth(&self, v: u32) -> usize {
        self.path_to_root(v).len() - 1
    }

    /// True if `anc` lies on the path from `v` to the root (`v` included).
    pub fn is_ancestor_or_self(&self, anc: u32, v: u32) -> bool {
        let mut cur = v;
        loop {
            if cur == anc {
                return true;
            }
            match self.father(cur) {
                Some(f) => cur = f,
                None => return false,
            }
        }
    }

    /// The subtree vertex set rooted at `v`, including `v`.
    pub fn hook(&self, v: u32) -> Result<BTreeSet<u32>, TreeError> {
        self.check_vertex(v)?;
        Ok(self
            .labels
            .iter()
            .filter(|&w| self.is_ancestor_or_self(v, w))
            .collect())
    }

    /// All hooks at once.
    pub fn hooks(&self) -> BTreeMap<u32, BTreeSet<u32>> {
        let mut out: BTreeMap<u32, BTreeSet<u32>> =
            self.labels.iter().map(|v| (v, BTreeSet::new())).collect();
        for w in self.labels.iter() {
            for a in self.path_to_root(w) {
                out.get_mut(&a).expect("label").insert(w);
            }
        }
        out
    }

    pub fn classify(&self, v: u32) -> Result<VertexClass, TreeError> {
        self.check_vertex(v)?;
        Ok(match self.father(v) {
            None => VertexClass::Root,
            Some(f) if f < v => VertexClass::Increasing,
            Some(_) => VertexClass::Decreasing,
        })
    }

    pub fn increasing_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.father.iter().filter(|(&c, &f)| f < c).map(|(&c, _)| c)
    }

    pub fn decreasing_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.father.iter().filter(|(&c, &f)| f > c).map(|(&c, _)| c)
    }

    pub fn is_increasing_tree(&self) -> bool {
        self.decreasing_vertices().next().is_none()
    }

    pub fn root_degree(&self) -> usize {
        let r = self.root();
        self.father.values().filter(|&&f| f == r).count()
    }

    /// Returns the same tree with some fathers replaced. The caller
    /// guarantees the result is still a tree.
    pub(crate) fn with_fathers(&self, changes: &[(u32, u32)]) -> RootedTree {
        let mut father = self.father.clone();
        for &(c, f) in changes {
            father.insert(c, f);
        }
        RootedTree::from_parts_unchecked(self.labels.clone(), father)
    }

    /// Classical Pruefer code over the sorted labels: repeatedly remove the
    /// smallest leaf and record its neighbour.
    pub fn prufer_code(&self) -> Vec<u32> {
        let n = self.len();
        if n <= 2 {
            return Vec::new();
        }
        let mut degree: BTreeMap<u32, usize> = self.labels.iter().map(|v| (v, 0)).collect();
        let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for (&c, &f) in &self.father {
            *degree.get_mut(&c).unwrap() += 1;
            *degree.get_mut(&f).unwrap() += 1;
            adj.entry(c).or_default().insert(f);
            adj.entry(f).or_default().insert(c);
        }
        let mut leaves: BTreeSet<u32> = degree
            .iter()
            .filter(|&(_, &d)| d == 1)
            .map(|(&v, _)| v)
            .collect();
        let mut code = Vec::with_capacity(n - 2);
        for _ in 0..n - 2 {
            let leaf = leaves.pop_first().expect("a tree always has a leaf");
            let nb = *adj[&leaf].iter().next().expect("leaf has a neighbour");
            code.push(nb);
            adj.get_mut(&nb).unwrap().remove(&leaf);
            let d = degree.get_mut(&nb).unwrap();
            *d -= 1;
            if *d == 1 {
                leaves.insert(nb);
            }
        }
        code
    }

    /// Inverse of [`RootedTree::prufer_code`].
    pub fn from_prufer(labels: &LabelSet, code: &[u32]) -> Result<Self, TreeError> {
        let n = labels.len();
        let expected = n.saturating_sub(2);
        if code.len() != expected {
            return Err(TreeError::PrueferLength {
                expected,
                got: code.len(),
            });
        }
        let mut idx = Vec::with_capacity(code.len());
        for &c in code {
            idx.push(labels.index_of(c).ok_or(TreeError::UnknownVertex(c))?);
        }
        Ok(decode_indices(labels, &idx))
    }
}

/// Decodes a Pruefer sequence given as positions in `labels` and roots the
/// result at the minimum label.
fn decode_indices(labels: &LabelSet, code: &[usize]) -> RootedTree {
    let n = labels.len();
    let lab = labels.as_slice();
    if n == 1 {
        return RootedTree::from_parts_unchecked(labels.clone(), BTreeMap::new());
    }
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    // linear-time decoding: `ptr` scans for the next smallest leaf
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &c in code {
        adj[leaf].push(c);
        adj[c].push(leaf);
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    adj[leaf].push(n - 1);
    adj[n - 1].push(leaf);

    let mut father = BTreeMap::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                father.insert(lab[w], lab[u]);
                stack.push(w);
            }
        }
    }
    RootedTree::from_parts_unchecked(labels.clone(), father)
}

/// Every labelled tree on a label set, in Pruefer-sequence order.
pub struct CayleyTrees {
    labels: LabelSet,
    code: Vec<usize>,
    done: bool,
}

pub fn enumerate_cayley(labels: &LabelSet) -> CayleyTrees {
    CayleyTrees {
        labels: labels.clone(),
        code: vec![0; labels.len().saturating_sub(2)],
        done: false,
    }
}

impl Iterator for CayleyTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let tree = decode_indices(&self.labels, &self.code);
        self.done = !odometer_step(&mut self.code, |_| self.labels.len());
        Some(tree)
    }
}

/// Advances a mixed-radix counter (last digit fastest); false on wrap-around.
fn odometer_step(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for k in (0..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < radix(k) {
            return true;
        }
        digits[k] = 0;
    }
    false
}

/// Every increasing tree on a label set, generated by attaching the labels
/// in increasing order, each to one of the vertices already present.
pub struct IncreasingTrees {
    labels: LabelSet,
    // choice[k] is the sorted position of the father of the (k+1)-th label
    choice: Vec<usize>,
    done: bool,
}

pub fn enumerate_increasing(labels: &LabelSet) -> IncreasingTrees {
    IncreasingTrees {
        labels: labels.clone(),
        choice: vec![0; labels.len() - 1],
        done: false,
    }
}

impl Iterator for IncreasingTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let lab = self.labels.as_slice();
        let father = self
            .choice
            .iter()
            .enumerate()
            .map(|(k, &c)| (lab[k + 1], lab[c]))
            .collect();
        let tree = RootedTree::from_parts_unchecked(self.labels.clone(), father);
        self.done = !odometer_step(&mut self.choice, |k| k + 1);
        Some(tree)
    }
}
