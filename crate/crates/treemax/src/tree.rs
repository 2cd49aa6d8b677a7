//! Finite uniform trees as a model of a non-atomic probability space with a
//! tree of partitions.
//!
//! A [`Tree`] of arity `a` and depth `d` has `a^d` leaves of measure
//! `a^(-d)` each; nodes at level `n` are contiguous blocks of `a^(d-n)`
//! leaves. Functions are values per leaf, measurable sets are leaf masks.
//! All reductions run in a fixed association order (children before
//! parents), so results are deterministic and, for power-of-two arity,
//! level conditioning preserves mass bit for bit.

use crate::error::{Error, Result};
use crate::num::{neumaier_sum, tree_block_sum};
use crate::stepfn::{AdmissibleTriple, StepFunction};
use crate::SetBoundQuery;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

/// Hard cap on the leaf count (dense per-leaf arrays).
pub const MAX_LEAVES: u64 = 1 << 24;

/// Uniform tree: every node at every level splits into `arity` children of
/// equal measure, down to `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tree {
    arity: u32,
    depth: u32,
}

impl Tree {
    pub fn uniform(arity: u32, depth: u32) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Constraint(format!("arity must be >= 2, got {arity}")));
        }
        if depth > 24 {
            return Err(Error::Resource(format!("depth {depth} exceeds the cap of 24")));
        }
        let mut leaves: u64 = 1;
        for _ in 0..depth {
            leaves = leaves.saturating_mul(arity as u64);
            if leaves > MAX_LEAVES {
                return Err(Error::Resource(format!(
                    "{arity}^{depth} leaves exceed the cap of {MAX_LEAVES}"
                )));
            }
        }
        Ok(Self { arity, depth })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn leaf_count(&self) -> u64 {
        (self.arity as u64).pow(self.depth)
    }

    pub fn leaf_measure(&self) -> f64 {
        1.0 / self.leaf_count() as f64
    }

    /// Leaves per node at `level` (level 0 is the root).
    pub fn node_size(&self, level: u32) -> Result<u64> {
        if level > self.depth {
            return Err(Error::Domain(format!(
                "level {level} exceeds depth {}",
                self.depth
            )));
        }
        Ok((self.arity as u64).pow(self.depth - level))
    }

    /// Leaf range covered by the node `(level, index)`.
    pub fn node_span(&self, node: NodeId) -> Result<std::ops::Range<u64>> {
        let size = self.node_size(node.level)?;
        let count = (self.arity as u64).pow(node.level);
        if node.index >= count {
            return Err(Error::Domain(format!(
                "node index {} out of range at level {} (< {count})",
                node.index, node.level
            )));
        }
        let start = node.index * size;
        Ok(start..start + size)
    }

    fn describe(&self) -> String {
        format!("arity {} depth {}", self.arity, self.depth)
    }
}

/// Address of a node: level below the root and index within the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeId {
    pub level: u32,
    pub index: u64,
}

impl NodeId {
    pub const ROOT: NodeId = NodeId { level: 0, index: 0 };
}

#[derive(Debug, Deserialize)]
struct RawLeafFunction {
    arity: u32,
    depth: u32,
    values: Vec<f64>,
}

/// Nonnegative function given by one value per leaf, in left-to-right
/// (depth-first) leaf order.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawLeafFunction")]
pub struct LeafFunction {
    tree: Tree,
    values: Vec<f64>,
}

impl TryFrom<RawLeafFunction> for LeafFunction {
    type Error = Error;

    fn try_from(raw: RawLeafFunction) -> Result<Self> {
        let tree = Tree::uniform(raw.arity, raw.depth)?;
        LeafFunction::new(tree, raw.values)
    }
}

impl Serialize for LeafFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LeafFunction", 3)?;
        s.serialize_field("arity", &self.tree.arity())?;
        s.serialize_field("depth", &self.tree.depth())?;
        s.serialize_field("values", &self.values)?;
        s.end()
    }
}

impl LeafFunction {
    pub fn new(tree: Tree, values: Vec<f64>) -> Result<Self> {
        if values.len() as u64 != tree.leaf_count() {
            return Err(Error::InvalidRepr(format!(
                "tree of {} has {} leaves, got {} values",
                tree.describe(),
                tree.leaf_count(),
                values.len()
            )));
        }
        for &v in &values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidRepr(format!(
                    "leaf values must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(Self { tree, values })
    }

    pub fn constant(tree: Tree, value: f64) -> Result<Self> {
        Self::new(tree, vec![value; tree.leaf_count() as usize])
    }

    pub fn tree(&self) -> Tree {
        self.tree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `∫_X φ dμ`, reduced in tree order.
    pub fn integral(&self) -> f64 {
        tree_block_sum(&self.values, self.tree.arity as usize) * self.tree.leaf_measure()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Per-leaf supremum of the averages over all tree nodes containing the
    /// leaf, from the root down to the leaf itself.
    pub fn maximal_function(&self) -> LeafFunction {
        let a = self.tree.arity as usize;
        let d = self.tree.depth as usize;

        // Node sums per level, built children-before-parents.
        let mut sums: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
        sums.push(self.values.clone());
        for _ in 0..d {
            let prev = sums.last().unwrap();
            let mut next = Vec::with_capacity(prev.len() / a);
            for chunk in prev.chunks_exact(a) {
                next.push(chunk.iter().sum());
            }
            sums.push(next);
        }
        sums.reverse(); // sums[level][node index]

        // Running maximum of ancestor averages, root to leaves.
        let mut running = vec![sums[0][0] / self.tree.leaf_count() as f64];
        for (level, level_sums) in sums.iter().enumerate().skip(1) {
            let block = (self.tree.arity as u64).pow((d - level) as u32) as f64;
            let mut next = Vec::with_capacity(level_sums.len());
            for (j, &s) in level_sums.iter().enumerate() {
                next.push((s / block).max(running[j / a]));
            }
            running = next;
        }
        LeafFunction { tree: self.tree, values: running }
    }

    /// Decreasing rearrangement as a step function with pieces of one leaf
    /// measure each (equal adjacent values merge).
    pub fn rearrangement(&self) -> StepFunction {
        let mut sorted = self.values.clone();
        sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let n = sorted.len();
        let bp: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        StepFunction::new(bp, sorted).expect("leaf grid is a valid breakpoint set")
    }

    /// Replace every leaf value by the average over its level-`n` ancestor.
    /// The integral is preserved (bit-exactly for power-of-two arity) and
    /// the sup norm cannot grow.
    pub fn condition_on_level(&self, level: u32) -> Result<LeafFunction> {
        if level > self.tree.depth {
            return Err(Error::Domain(format!(
                "conditioning level {level} exceeds depth {}",
                self.tree.depth
            )));
        }
        let block = self.tree.node_size(level)? as usize;
        let a = self.tree.arity as usize;
        let mut values = Vec::with_capacity(self.values.len());
        for chunk in self.values.chunks_exact(block) {
            let avg = tree_block_sum(chunk, a) / block as f64;
            values.extend(std::iter::repeat_n(avg, block));
        }
        Ok(LeafFunction { tree: self.tree, values })
    }
}

#[derive(Debug, Deserialize)]
pub struct RawNodeSet {
    pub leaves: Vec<u64>,
}

/// Measurable set represented as a union of leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    tree: Tree,
    mask: Vec<bool>,
    member_count: u64,
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("NodeSet", 1)?;
        s.serialize_field("leaves", &self.indices())?;
        s.end()
    }
}

impl NodeSet {
    pub fn empty(tree: Tree) -> Self {
        Self { tree, mask: vec![false; tree.leaf_count() as usize], member_count: 0 }
    }

    pub fn full(tree: Tree) -> Self {
        Self {
            tree,
            mask: vec![true; tree.leaf_count() as usize],
            member_count: tree.leaf_count(),
        }
    }

    pub fn from_indices(tree: Tree, leaves: &[u64]) -> Result<Self> {
        let mut set = Self::empty(tree);
        for &i in leaves {
            if i >= tree.leaf_count() {
                return Err(Error::InvalidRepr(format!(
                    "leaf index {i} out of range for tree of {}",
                    tree.describe()
                )));
            }
            if !set.mask[i as usize] {
                set.mask[i as usize] = true;
                set.member_count += 1;
            }
        }
        Ok(set)
    }

    fn from_spans(tree: Tree, spans: &[(u64, u64)]) -> Self {
        let mut set = Self::empty(tree);
        for &(start, len) in spans {
            for i in start..start + len {
                set.mask[i as usize] = true;
            }
            set.member_count += len;
        }
        set
    }

    pub fn tree(&self) -> Tree {
        self.tree
    }

    pub fn contains(&self, leaf: u64) -> bool {
        self.mask[leaf as usize]
    }

    pub fn member_count(&self) -> u64 {
        self.member_count
    }

    pub fn measure(&self) -> f64 {
        self.member_count as f64 * self.tree.leaf_measure()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i as u64))
            .collect()
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.tree == other.tree
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// The `count` leaves with the largest values of `w`, lowest leaf index
    /// first among ties.
    pub fn top_leaves(w: &LeafFunction, count: u64) -> NodeSet {
        let count = count.min(w.tree.leaf_count()) as usize;
        let mut order: Vec<u32> = (0..w.values.len() as u32).collect();
        order.sort_by(|&i, &j| {
            w.values[j as usize]
                .partial_cmp(&w.values[i as usize])
                .unwrap()
                .then(i.cmp(&j))
        });
        let mut set = NodeSet::empty(w.tree);
        for &i in &order[..count] {
            set.mask[i as usize] = true;
        }
        set.member_count = count as u64;
        set
    }
}

/// Super-level set `[w > u]` (strict) or `[w >= u]`.
pub fn super_level(w: &LeafFunction, u: f64, strict: bool) -> NodeSet {
    let mut set = NodeSet::empty(w.tree());
    for (i, &v) in w.values().iter().enumerate() {
        if (strict && v > u) || (!strict && v >= u) {
            set.mask[i] = true;
            set.member_count += 1;
        }
    }
    set
}

/// `∫_K φ dμ` over the member leaves of `K`.
pub fn integrate_over(phi: &LeafFunction, set: &NodeSet) -> Result<f64> {
    if phi.tree() != set.tree {
        return Err(Error::TreeMismatch {
            lhs: phi.tree().describe(),
            rhs: set.tree.describe(),
        });
    }
    let sum = neumaier_sum(
        phi.values()
            .iter()
            .zip(&set.mask)
            .filter(|(_, &m)| m)
            .map(|(&v, _)| v),
    );
    Ok(sum * phi.tree().leaf_measure())
}

/// Largest distinct value `u` of `w` with `μ(w >= u) >= k`; the result
/// satisfies `μ(w > u) <= k <= μ(w >= u)`.
///
/// An everywhere-zero `w` with `k < 1` has no meaningful level-set threshold
/// and is rejected.
pub fn upper_quantile(w: &LeafFunction, k: f64) -> Result<f64> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::Domain(format!("upper_quantile: k={k} outside (0,1]")));
    }
    if w.max_value() == 0.0 && k < 1.0 {
        return Err(Error::Domain(
            "upper_quantile: w vanishes everywhere and k < 1".into(),
        ));
    }
    let n = w.tree().leaf_count();
    // Integer target: count >= k*n, robust to the representability of k.
    let mut sorted = w.values().to_vec();
    sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let target = k * n as f64;
    let mut i = 0usize;
    let mut u = sorted[0];
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        // j = count of leaves with w >= v
        if j as f64 >= target {
            u = v;
            break;
        }
        i = j;
    }
    Ok(u)
}

/// The sandwich set `D` between the strict and non-strict super-level sets
/// of `w` at its threshold, together with the blend coefficient `s` solving
/// `μ(D) = s·μ(V1) + (1-s)·μ(V2)`.
#[derive(Debug, Clone)]
pub struct SandwichResult {
    /// `D` with `[w > u] ⊆ D ⊆ [w >= u]`.
    pub set: NodeSet,
    /// The level-set threshold `u`.
    pub threshold: f64,
    /// `s` in `[0,1]`; by convention 1 when the two level sets coincide.
    pub blend: f64,
}

/// Builds the measure-`k` set sandwiched between the super-level sets of
/// `w`. A `k` that is not a multiple of the leaf measure is replaced by the
/// nearest representable value (at least one leaf); the realized measure is
/// `result.set.measure()`. Ties at the threshold are filled lowest leaf
/// index first.
pub fn sandwich_set(w: &LeafFunction, k: f64) -> Result<SandwichResult> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::Domain(format!("sandwich_set: k={k} outside (0,1]")));
    }
    let n = w.tree().leaf_count();
    let target = ((k * n as f64).round() as u64).clamp(1, n);
    let k_repr = target as f64 / n as f64;
    let u = upper_quantile(w, k_repr)?;

    let strict = super_level(w, u, true);
    let weak = super_level(w, u, false);
    let (n1, n2) = (strict.member_count(), weak.member_count());
    if !(n1 <= target && target <= n2) {
        return Err(Error::Domain(format!(
            "sandwich_set: internal contract broke (n1={n1}, target={target}, n2={n2})"
        )));
    }

    let mut set = strict.clone();
    let mut missing = target - n1;
    for i in 0..w.values().len() {
        if missing == 0 {
            break;
        }
        if w.values()[i] == u && !set.mask[i] {
            set.mask[i] = true;
            set.member_count += 1;
            missing -= 1;
        }
    }

    let blend = if n1 == n2 {
        1.0
    } else {
        (n2 - target) as f64 / (n2 - n1) as f64
    };
    Ok(SandwichResult { set, threshold: u, blend })
}

/// Union of maximal nodes covering the first `count` leaves of the span
/// `[start, start+len)`; `len` must be a node size and `start` node-aligned.
fn prefix_node_spans(arity: u64, start: u64, len: u64, count: u64) -> Vec<(u64, u64)> {
    debug_assert!(count <= len);
    let mut spans = Vec::new();
    let mut cur = start;
    let mut rem = count;
    while rem > 0 {
        let mut size = len;
        while size > rem || !cur.is_multiple_of(size) {
            size /= arity;
        }
        spans.push((cur, size));
        cur += size;
        rem -= size;
    }
    spans
}

/// A union of descendant nodes of `node` with total measure as close to
/// `(1-alpha)·μ(node)` as the leaf grid allows (error at most half a leaf,
/// zero when the target is a multiple of the leaf measure).
pub fn select_subfamily(tree: Tree, node: NodeId, alpha: f64) -> Result<NodeSet> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("select_subfamily: alpha={alpha} outside (0,1)")));
    }
    let span = tree.node_span(node)?;
    let len = span.end - span.start;
    let count = (((1.0 - alpha) * len as f64).round() as u64).min(len);
    let spans = prefix_node_spans(tree.arity() as u64, span.start, len, count);
    Ok(NodeSet::from_spans(tree, &spans))
}

/// Ideal nested measures of the staircase must stay separated at the leaf
/// resolution: `round(c^(j/levels)·n)` strictly decreasing and >= 1.
fn staircase_depth_ok(leaves: u64, knee: f64, levels: u32) -> bool {
    let n = leaves as f64;
    let mut prev = n.round();
    for j in 1..=levels {
        let q = (knee.powf(j as f64 / levels as f64) * n).round();
        if q < 1.0 || q >= prev {
            return false;
        }
        prev = q;
    }
    true
}

fn minimal_staircase_depth(arity: u32, knee: f64, levels: u32) -> Option<u32> {
    (1..=24u32)
        .filter(|&d| (arity as u64).checked_pow(d).is_some_and(|n| n <= MAX_LEAVES))
        .find(|&d| staircase_depth_ok((arity as u64).pow(d), knee, levels))
}

/// Refine a node span through `levels` rounds, each keeping a sub-union of
/// nodes of relative measure `ratio` inside every node of the previous
/// round. Rounding is corrected cumulatively, so the total drifts by at
/// most one leaf per round.
fn staircase_select(arity: u64, start: u64, len: u64, ratio: f64, levels: u32) -> Vec<(u64, u64)> {
    let mut spans = vec![(start, len)];
    for _ in 0..levels {
        let mut next = Vec::new();
        let mut target = 0.0f64;
        let mut selected = 0u64;
        for &(s, l) in &spans {
            target += ratio * l as f64;
            let want = target.round().max(0.0) as u64;
            let q = want.saturating_sub(selected).min(l);
            selected += q;
            next.extend(prefix_node_spans(arity, s, l, q));
        }
        spans = next;
    }
    spans
}

/// Two-valued staircase function whose rearrangement approximates the
/// two-valued extremizer of `triple` and whose maximal-function integral
/// approaches the sharp full-space bound as `levels` and the depth grow.
///
/// Geometry: nested node unions `S_0 = X ⊇ S_1 ⊇ ... ⊇ S_levels` with the
/// measure ratio `c^(1/levels)` per round and `φ = M1` on the innermost
/// union, `M2` elsewhere. Every leaf dropped at round `j` keeps an ancestor
/// of average `M2 + (M1-M2)·c/t_j`, a lower Riemann sum of the running
/// average of the extremizer.
pub fn staircase_extremizer(
    tree: Tree,
    triple: &AdmissibleTriple,
    levels: u32,
) -> Result<LeafFunction> {
    if levels == 0 {
        return Err(Error::Domain("staircase_extremizer: levels must be >= 1".into()));
    }
    let knee = triple.knee();
    if knee >= 1.0 {
        return LeafFunction::constant(tree, triple.sup());
    }
    let n = tree.leaf_count();
    if !staircase_depth_ok(n, knee, levels) {
        let hint = minimal_staircase_depth(tree.arity(), knee, levels)
            .map(|d| format!("minimal depth {d}"))
            .unwrap_or_else(|| "no depth within the leaf cap suffices; lower levels".into());
        return Err(Error::Resource(format!(
            "staircase with {levels} levels needs more than {} leaves ({hint})",
            n
        )));
    }

    let ratio = knee.powf(1.0 / levels as f64);
    let spans = staircase_select(tree.arity() as u64, 0, n, ratio, levels);
    let selected = NodeSet::from_spans(tree, &spans);
    let mut values = vec![triple.inf(); n as usize];
    for (i, v) in values.iter_mut().enumerate() {
        if selected.mask[i] {
            *v = triple.sup();
        }
    }
    LeafFunction::new(tree, values)
}

fn representable_leaf_count(tree: Tree, k: f64, what: &str) -> Result<u64> {
    let n = tree.leaf_count();
    let exact = k * n as f64;
    let count = exact.round();
    if (exact - count).abs() > 1e-9 * n as f64 {
        return Err(Error::Quantization(format!(
            "{what}: k={k} is not a multiple of the leaf measure 1/{n}"
        )));
    }
    if count < 1.0 {
        return Err(Error::Quantization(format!(
            "{what}: k={k} is below one leaf measure 1/{n}"
        )));
    }
    Ok(count as u64)
}

/// Extremal pair for the small-set branch `k <= f/M`: a union of nodes `K`
/// of measure `k` where `φ = M`, a constant elsewhere chosen so the
/// integral is `f`. Then `∫_K Mφ = kM` exactly.
pub fn extremal_small_set(tree: Tree, query: &SetBoundQuery) -> Result<(LeafFunction, NodeSet)> {
    let (f, m, k) = (query.integral(), query.sup(), query.set_measure());
    if k * m > f {
        return Err(Error::WrongBranch(format!(
            "k={k} exceeds f/M={}; use the large-set construction",
            f / m
        )));
    }
    let count = representable_leaf_count(tree, k, "extremal_small_set")?;
    let n = tree.leaf_count();
    let k_repr = count as f64 / n as f64;

    let spans = prefix_node_spans(tree.arity() as u64, 0, n, count);
    let set = NodeSet::from_spans(tree, &spans);

    let off_value = if count == n {
        0.0 // k = 1 forces f = M and the off-set region is empty
    } else {
        let v = (f - m * k_repr) / (1.0 - k_repr);
        if v < 0.0 {
            return Err(Error::Quantization(format!(
                "extremal_small_set: representable k={k_repr} crosses f/M={}",
                f / m
            )));
        }
        v
    };
    let mut values = vec![off_value; n as usize];
    for (i, v) in values.iter_mut().enumerate() {
        if set.mask[i] {
            *v = m;
        }
    }
    Ok((LeafFunction::new(tree, values)?, set))
}

/// Extremal pair for the large-set branch `f/M <= k <= 1`: a union of nodes
/// `K` of measure `k` carrying scaled staircases with triple `(M, f/k, 0)`,
/// zero outside. `∫_K Mφ` approaches `f + f·log(Mk/f)` as `levels` and the
/// depth grow.
pub fn extremal_large_set(
    tree: Tree,
    query: &SetBoundQuery,
    levels: u32,
) -> Result<(LeafFunction, NodeSet)> {
    let (f, m, k) = (query.integral(), query.sup(), query.set_measure());
    if levels == 0 {
        return Err(Error::Domain("extremal_large_set: levels must be >= 1".into()));
    }
    if k * m < f {
        return Err(Error::WrongBranch(format!(
            "k={k} is below f/M={}; use the small-set construction",
            f / m
        )));
    }
    let count = representable_leaf_count(tree, k, "extremal_large_set")?;
    let n = tree.leaf_count();
    let k_repr = count as f64 / n as f64;
    let scaled_mean = f / k_repr;
    let knee = (scaled_mean / m).min(1.0);

    let arity = tree.arity() as u64;
    let node_spans = prefix_node_spans(arity, 0, n, count);
    let set = NodeSet::from_spans(tree, &node_spans);

    let mut values = vec![0.0f64; n as usize];
    if knee >= 1.0 {
        // k at the branch point: the scaled class degenerates to the
        // constant M on K.
        for &(s, l) in &node_spans {
            for v in &mut values[s as usize..(s + l) as usize] {
                *v = m;
            }
        }
    } else {
        let largest = node_spans.iter().map(|&(_, l)| l).max().unwrap_or(0);
        if !staircase_depth_ok(largest, knee, levels) {
            let hint = minimal_staircase_depth(tree.arity(), knee, levels)
                .map(|d| format!("minimal depth {d} for the dominant node"))
                .unwrap_or_else(|| "no depth within the leaf cap suffices; lower levels".into());
            return Err(Error::Resource(format!(
                "extremal_large_set: staircase with {levels} levels does not fit in {largest} leaves ({hint})"
            )));
        }
        let ratio = knee.powf(1.0 / levels as f64);
        for &(s, l) in &node_spans {
            for (start, len) in staircase_select(arity, s, l, ratio, levels) {
                for v in &mut values[start as usize..(start + len) as usize] {
                    *v = m;
                }
            }
        }
    }
    Ok((LeafFunction::new(tree, values)?, set))
}
