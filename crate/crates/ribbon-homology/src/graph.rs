//! Stable ribbon graphs: data model, validation, permutation structure,
//! genus/marked-point recovery, canonical forms, automorphisms, and
//! orientation bookkeeping.
//!
//! A graph stores 2E half-edges (0..2E−1), a fixed-point-free pairing
//! involution, and a partition of the half-edges into vertices, each
//! vertex further partitioned into cyclically ordered cycles and carrying
//! two nonnegative defects (genus and boundary). The orientation is an
//! ordering of the edges; reordering by an odd permutation negates the
//! generator, which is carried as an explicit sign, never normalized away.

use crate::scalar::{add_term, Q};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One vertex: its cycles (each a cyclic sequence of half-edges) and the
/// two defects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub cycles: Vec<Vec<usize>>,
    pub genus_defect: u32,
    pub boundary_defect: u32,
}

/// A stable ribbon graph. Construct with [`StableRibbonGraph::new`] and
/// check [`StableRibbonGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRibbonGraph {
    /// Number of edges E; half-edges are 0..2E−1.
    pub edges: usize,
    /// The pairing involution: `sigma1[h]` is the other half of h's edge.
    pub sigma1: Vec<usize>,
    pub vertices: Vec<Vertex>,
    /// Orientation: the E edges, each named by its smaller half-edge, in
    /// order. Defined up to even permutation; odd reorderings carry −1.
    pub orientation: Vec<usize>,
}

impl StableRibbonGraph {
    /// Build a graph from edge pairs and vertex data, with the default
    /// orientation listing edges by ascending smaller half-edge.
    pub fn new(pairs: &[(usize, usize)], vertices: Vec<Vertex>) -> StableRibbonGraph {
        let edges = pairs.len();
        let mut sigma1 = vec![usize::MAX; 2 * edges];
        for &(a, b) in pairs {
            sigma1[a] = b;
            sigma1[b] = a;
        }
        let mut orientation: Vec<usize> = pairs.iter().map(|&(a, b)| a.min(b)).collect();
        orientation.sort_unstable();
        StableRibbonGraph {
            edges,
            sigma1,
            vertices,
            orientation,
        }
    }

    /// Total half-edge count 2E.
    pub fn half_edges(&self) -> usize {
        2 * self.edges
    }

    /// The cycle-rotation permutation σ0: each half-edge maps to the next
    /// one in its cycle.
    pub fn sigma0(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.half_edges()];
        for v in &self.vertices {
            for cyc in &v.cycles {
                for (i, &h) in cyc.iter().enumerate() {
                    s[h] = cyc[(i + 1) % cyc.len()];
                }
            }
        }
        s
    }

    /// The perimeter permutation σ∞: apply σ1 first, then σ0⁻¹.
    pub fn sigma_infinity(&self) -> Vec<usize> {
        let s0 = self.sigma0();
        let mut s0_inv = vec![usize::MAX; self.half_edges()];
        for (h, &t) in s0.iter().enumerate() {
            s0_inv[t] = h;
        }
        (0..self.half_edges())
            .map(|h| s0_inv[self.sigma1[h]])
            .collect()
    }

    /// Number of perimeters: orbits of σ∞.
    pub fn perimeter_count(&self) -> usize {
        count_orbits(&self.sigma_infinity())
    }

    /// Total number of cycles |C(Γ)| over all vertices.
    pub fn cycle_count(&self) -> usize {
        self.vertices.iter().map(|v| v.cycles.len()).sum()
    }

    /// Check every structural invariant; returns the first violation.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.half_edges();
        if self.sigma1.len() != n {
            return Err(format!("pairing table has length {} ≠ 2E = {n}", self.sigma1.len()));
        }
        for h in 0..n {
            let t = self.sigma1[h];
            if t >= n {
                return Err(format!("half-edge {h} pairs out of range"));
            }
            if t == h {
                return Err(format!("pairing has a fixed point at half-edge {h}"));
            }
            if self.sigma1[t] != h {
                return Err(format!("pairing is not an involution at half-edge {h}"));
            }
        }
        let mut seen = vec![false; n];
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.cycles.is_empty() {
                return Err(format!("vertex {vi} has no half-edges"));
            }
            for cyc in &v.cycles {
                if cyc.is_empty() {
                    return Err(format!("vertex {vi} has an empty cycle"));
                }
                for &h in cyc {
                    if h >= n {
                        return Err(format!("half-edge {h} out of range in vertex {vi}"));
                    }
                    if seen[h] {
                        return Err(format!("half-edge {h} appears twice"));
                    }
                    seen[h] = true;
                }
            }
            let valency: usize = v.cycles.iter().map(Vec::len).sum();
            if v.cycles.len() == 1 && v.genus_defect == 0 && v.boundary_defect == 0 && valency < 3
            {
                return Err(format!(
                    "vertex {vi} with one cycle and no defects has valency {valency} < 3"
                ));
            }
        }
        if let Some(h) = seen.iter().position(|&s| !s) {
            return Err(format!("half-edge {h} belongs to no vertex"));
        }
        // Orientation must list each edge exactly once by its lesser half.
        let mut edge_reps: Vec<usize> = (0..n).filter(|&h| h < self.sigma1[h]).collect();
        edge_reps.sort_unstable();
        let mut listed = self.orientation.clone();
        listed.sort_unstable();
        if listed != edge_reps {
            return Err("orientation does not list each edge exactly once".into());
        }
        Ok(())
    }

    /// Is the graph connected (via cycles, vertices, and the pairing)?
    pub fn is_connected(&self) -> bool {
        if self.edges == 0 {
            return true;
        }
        let n = self.half_edges();
        let mut owner = vec![usize::MAX; n];
        for (vi, v) in self.vertices.iter().enumerate() {
            for cyc in &v.cycles {
                for &h in cyc {
                    owner[h] = vi;
                }
            }
        }
        let mut seen_v = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen_v[owner[0]] = true;
        let mut visited_halves = BTreeSet::new();
        while let Some(h) = stack.pop() {
            if !visited_halves.insert(h) {
                continue;
            }
            let v = owner[h];
            if !seen_v[v] {
                seen_v[v] = true;
            }
            // everything at the same vertex
            for cyc in &self.vertices[v].cycles {
                for &h2 in cyc {
                    if !visited_halves.contains(&h2) {
                        stack.push(h2);
                    }
                }
            }
            let t = self.sigma1[h];
            if !visited_halves.contains(&t) {
                stack.push(t);
            }
        }
        seen_v.iter().all(|&s| s)
    }

    /// Recover (genus, marked points) of the closed surface this connected
    /// graph decorates. Fails hard on non-integer or negative genus.
    pub fn recover_g_n(&self) -> Result<(i64, i64), String> {
        if !self.is_connected() {
            return Err("genus recovery requires a connected graph".into());
        }
        let np = self.perimeter_count() as i64;
        let v = self.vertices.len() as i64;
        let e = self.edges as i64;
        let c = self.cycle_count() as i64;
        let defect_n: i64 = self.vertices.iter().map(|v| v.boundary_defect as i64).sum();
        let defect_g: i64 = self.vertices.iter().map(|v| v.genus_defect as i64).sum();
        let n = np + defect_n;
        let twice_g = 2 * (1 - v + defect_g) + (e + c - np);
        if twice_g % 2 != 0 {
            return Err(format!("non-integer genus: 2g = {twice_g}"));
        }
        let g = twice_g / 2;
        if g < 0 {
            return Err(format!("negative genus {g}"));
        }
        if 2 - 2 * g - n >= 0 {
            return Err(format!("unstable surface type (g,n)=({g},{n})"));
        }
        Ok((g, n))
    }

    /// Serialize in the bit-exact record format.
    pub fn to_record(&self) -> String {
        let mut pairs: Vec<(usize, usize)> = (0..self.half_edges())
            .filter(|&h| h < self.sigma1[h])
            .map(|h| (h, self.sigma1[h]))
            .collect();
        pairs.sort_unstable();
        let pair_s: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let vert_s: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                let cyc_s: Vec<String> = v
                    .cycles
                    .iter()
                    .map(|c| {
                        format!(
                            "cycle=[{}]",
                            c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                format!(
                    "[{}; g={}; n={}]",
                    cyc_s.join(","),
                    v.genus_defect,
                    v.boundary_defect
                )
            })
            .collect();
        format!(
            "E={}; sigma1=[{}]; vertices=[{}]; orient=[{}]",
            self.edges,
            pair_s.join(","),
            vert_s.join(","),
            self.orientation
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Parse the record format produced by [`Self::to_record`].
    pub fn parse_record(s: &str) -> Result<StableRibbonGraph, String> {
        let mut edges = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut orientation: Vec<usize> = Vec::new();
        for field in split_top_level(s.trim(), ';') {
            let field = field.trim();
            if let Some(v) = field.strip_prefix("E=") {
                edges = Some(v.trim().parse::<usize>().map_err(|e| format!("bad E: {e}"))?);
            } else if let Some(v) = field.strip_prefix("sigma1=") {
                let inner = strip_brackets(v)?;
                for p in split_top_level(inner, ',') {
                    let p = p.trim();
                    if p.is_empty() {
                        continue;
                    }
                    let p = p
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or_else(|| format!("bad pair {p:?}"))?;
                    let mut it = p.split(',').map(str::trim);
                    let a = it
                        .next()
                        .ok_or("missing half-edge")?
                        .parse::<usize>()
                        .map_err(|e| format!("bad half-edge: {e}"))?;
                    let b = it
                        .next()
                        .ok_or("missing half-edge")?
                        .parse::<usize>()
                        .map_err(|e| format!("bad half-edge: {e}"))?;
                    pairs.push((a, b));
                }
            } else if let Some(v) = field.strip_prefix("vertices=") {
                let inner = strip_brackets(v)?;
                for vrec in split_top_level(inner, ',') {
                    let vrec = vrec.trim();
                    if vrec.is_empty() {
                        continue;
                    }
                    let vrec = strip_brackets(vrec)?;
                    let mut cycles = Vec::new();
                    let mut g = 0u32;
                    let mut n = 0u32;
                    for part in split_top_level(vrec, ';') {
                        let part = part.trim();
                        if let Some(rest) = part.strip_prefix("g=") {
                            g = rest.trim().parse().map_err(|e| format!("bad g: {e}"))?;
                        } else if let Some(rest) = part.strip_prefix("n=") {
                            n = rest.trim().parse().map_err(|e| format!("bad n: {e}"))?;
                        } else {
                            for cyc in split_top_level(part, ',') {
                                let cyc = cyc.trim();
                                if cyc.is_empty() {
                                    continue;
                                }
                                let cyc = cyc
                                    .strip_prefix("cycle=")
                                    .ok_or_else(|| format!("expected cycle=, got {cyc:?}"))?;
                                let inner = strip_brackets(cyc)?;
                                let mut halves = Vec::new();
                                for h in inner.split(',') {
                                    let h = h.trim();
                                    if h.is_empty() {
                                        continue;
                                    }
                                    halves.push(
                                        h.parse::<usize>()
                                            .map_err(|e| format!("bad half-edge: {e}"))?,
                                    );
                                }
                                cycles.push(halves);
                            }
                        }
                    }
                    vertices.push(Vertex {
                        cycles,
                        genus_defect: g,
                        boundary_defect: n,
                    });
                }
            } else if let Some(v) = field.strip_prefix("orient=") {
                let inner = strip_brackets(v)?;
                for h in inner.split(',') {
                    let h = h.trim();
                    if h.is_empty() {
                        continue;
                    }
                    orientation.push(h.parse::<usize>().map_err(|e| format!("bad edge: {e}"))?);
                }
            } else if !field.is_empty() {
                return Err(format!("unknown field {field:?}"));
            }
        }
        let edges = edges.ok_or("missing E=")?;
        if pairs.len() != edges {
            return Err(format!("E={edges} but {} pairs listed", pairs.len()));
        }
        let mut g = StableRibbonGraph::new(&pairs, vertices);
        if !orientation.is_empty() {
            g.orientation = orientation;
        }
        g.validate()?;
        Ok(g)
    }
}

/// Split on `sep` at bracket nesting depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_brackets(s: &str) -> Result<&str, String> {
    s.trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| format!("expected [...], got {s:?}"))
}

fn count_orbits(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut orbits = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = perm[h];
        }
    }
    orbits
}

/// Parity (as a sign ±1) of the permutation taking `from` to `to`, both
/// listings of the same distinct items.
pub fn permutation_parity_between<T: Ord + Clone>(from: &[T], to: &[T]) -> i64 {
    debug_assert_eq!(from.len(), to.len());
    let index: BTreeMap<&T, usize> = to.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let perm: Vec<usize> = from.iter().map(|t| index[t]).collect();
    permutation_parity(&perm)
}

/// Parity (±1) of a permutation of 0..n−1.
pub fn permutation_parity(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = perm[h];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// The canonical isomorphism-class key of a graph, together with its
/// canonically relabeled representative, automorphism count, and the flag
/// marking classes killed by an orientation-reversing automorphism.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub encoding: String,
    pub representative: StableRibbonGraph,
    pub automorphisms: u64,
    pub zero_flagged: bool,
}

impl PartialEq for GraphClass {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}
impl Eq for GraphClass {}
impl PartialOrd for GraphClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GraphClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.encoding.cmp(&other.encoding)
    }
}
impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encoding)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permutations(&mut items, n, &mut out);
    out
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// The canonical encoding is the lexicographically least token stream
/// over all traversals of the graph. A traversal picks a vertex order, a
/// cycle order within each vertex, and a starting rotation for each
/// cycle; half-edges are labeled 0,1,2,… in traversal order. The stream
/// interleaves structure and pairing data so a backtracking search can
/// prune as soon as a prefix exceeds the best known stream:
///
/// - opening a vertex emits `[V, g(v), n(v)]`,
/// - opening a cycle emits `[C]`,
/// - visiting a half-edge emits its partner's label if the partner is
///   already labeled, else the `unseen` marker.
///
/// Numeric token order puts labels < `unseen` < `C` < `V`, so earlier
/// pair closures, then longer cycles, then fatter vertices win ties.
/// Every traversal of a given graph produces a stream of the same
/// length (2E + |C| + 3|V|), so lexicographic comparison is positional.
/// The number of minimal traversals equals the automorphism count, and
/// each automorphism's edge parity is read off the traversal's induced
/// edge order.
struct CanonicalSearch<'a> {
    g: &'a StableRibbonGraph,
    tok_unseen: u32,
    tok_cycle: u32,
    tok_vertex: u32,
    best: Option<Vec<u32>>,
    labelings: Vec<Vec<usize>>,
    generation: u64,
    stream: Vec<u32>,
    new_label: Vec<usize>,
    labeled: Vec<usize>,
    vertex_used: Vec<bool>,
    cycle_used: Vec<Vec<bool>>,
    /// Position of the first difference between `stream` and `best`
    /// (None = identical so far; a difference is always "less", since
    /// "greater" prunes immediately).
    first_diff: Option<usize>,
}

type CanonicalSnapshot = (usize, usize, Option<usize>, u64);

impl<'a> CanonicalSearch<'a> {
    fn new(g: &'a StableRibbonGraph) -> Self {
        let n = g.half_edges();
        let stream_len = n + g.cycle_count() + 3 * g.vertices.len();
        CanonicalSearch {
            g,
            tok_unseen: n as u32,
            tok_cycle: n as u32 + 1,
            tok_vertex: n as u32 + 2,
            best: None,
            labelings: Vec::new(),
            generation: 0,
            stream: Vec::with_capacity(stream_len),
            new_label: vec![usize::MAX; n],
            labeled: Vec::with_capacity(n),
            vertex_used: vec![false; g.vertices.len()],
            cycle_used: g.vertices.iter().map(|v| vec![false; v.cycles.len()]).collect(),
            first_diff: None,
        }
    }

    /// Append a token, comparing against the best stream while the
    /// prefix is still tied. Returns false when the branch is beaten.
    fn emit(&mut self, tok: u32) -> bool {
        if self.first_diff.is_none() {
            if let Some(best) = &self.best {
                let pos = self.stream.len();
                match tok.cmp(&best[pos]) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => self.first_diff = Some(pos),
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        self.stream.push(tok);
        true
    }

    fn snapshot(&self) -> CanonicalSnapshot {
        (
            self.stream.len(),
            self.labeled.len(),
            self.first_diff,
            self.generation,
        )
    }

    fn restore(&mut self, snap: CanonicalSnapshot) {
        self.stream.truncate(snap.0);
        while self.labeled.len() > snap.1 {
            let h = self.labeled.pop().unwrap();
            self.new_label[h] = usize::MAX;
        }
        // If the best stream was replaced below this point, the current
        // prefix is exactly a prefix of the new best (the new best was
        // completed through it), so the tie is restored.
        self.first_diff = if self.generation == snap.3 { snap.2 } else { None };
    }

    fn choose_vertex(&mut self) {
        if self.vertex_used.iter().all(|&u| u) {
            self.complete();
            return;
        }
        let g = self.g;
        for vi in 0..g.vertices.len() {
            if self.vertex_used[vi] {
                continue;
            }
            let snap = self.snapshot();
            self.vertex_used[vi] = true;
            let v = &g.vertices[vi];
            if self.emit(self.tok_vertex)
                && self.emit(v.genus_defect)
                && self.emit(v.boundary_defect)
            {
                self.choose_cycle(vi);
            }
            self.vertex_used[vi] = false;
            self.restore(snap);
        }
    }

    fn choose_cycle(&mut self, vi: usize) {
        if self.cycle_used[vi].iter().all(|&u| u) {
            self.choose_vertex();
            return;
        }
        let g = self.g;
        for ci in 0..g.vertices[vi].cycles.len() {
            if self.cycle_used[vi][ci] {
                continue;
            }
            let len = g.vertices[vi].cycles[ci].len();
            for rot in 0..len {
                let snap = self.snapshot();
                self.cycle_used[vi][ci] = true;
                let mut alive = self.emit(self.tok_cycle);
                if alive {
                    for k in 0..len {
                        let h = g.vertices[vi].cycles[ci][(rot + k) % len];
                        let partner = g.sigma1[h];
                        let tok = if self.new_label[partner] != usize::MAX {
                            self.new_label[partner] as u32
                        } else {
                            self.tok_unseen
                        };
                        self.new_label[h] = self.labeled.len();
                        self.labeled.push(h);
                        if !self.emit(tok) {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    self.choose_cycle(vi);
                }
                self.cycle_used[vi][ci] = false;
                self.restore(snap);
            }
        }
    }

    fn complete(&mut self) {
        let strictly_better = match (&self.best, self.first_diff) {
            (None, _) => true,
            (Some(_), Some(_)) => true,
            (Some(_), None) => false,
        };
        if strictly_better {
            self.best = Some(self.stream.clone());
            self.labelings = vec![self.new_label.clone()];
            self.generation += 1;
            self.first_diff = None;
        } else {
            self.labelings.push(self.new_label.clone());
        }
    }
}

/// Render a token stream as a compact printable key.
fn render_stream(edges: usize, stream: &[u32], n_half: usize) -> String {
    let mut parts: Vec<String> = Vec::with_capacity(stream.len());
    for &t in stream {
        if t == n_half as u32 {
            parts.push("*".into());
        } else if t == n_half as u32 + 1 {
            parts.push("c".into());
        } else if t == n_half as u32 + 2 {
            parts.push("v".into());
        } else {
            parts.push(t.to_string());
        }
    }
    format!("E{edges}:{}", parts.join(","))
}

/// The edge order a labeling induces (ascending first-seen label),
/// reported as original lesser-half representatives.
fn edge_order_of(g: &StableRibbonGraph, new_label: &[usize]) -> Vec<usize> {
    let mut order: Vec<(usize, usize)> = (0..g.half_edges())
        .filter(|&h| new_label[h] < new_label[g.sigma1[h]])
        .map(|h| (new_label[h], h.min(g.sigma1[h])))
        .collect();
    order.sort_unstable();
    order.into_iter().map(|(_, rep)| rep).collect()
}

/// Compute the canonical class of a graph and the orientation sign of the
/// given graph relative to the canonical representative.
pub fn canonical_form(g: &StableRibbonGraph) -> (GraphClass, i64) {
    debug_assert!(g.validate().is_ok(), "canonical_form needs a valid graph");
    let mut search = CanonicalSearch::new(g);
    search.choose_vertex();
    let stream = search.best.expect("at least one traversal exists");
    let encoding = render_stream(g.edges, &stream, g.half_edges());
    let representative = relabel(g, &search.labelings[0]);
    let base_order = edge_order_of(g, &search.labelings[0]);
    let mut parities = BTreeSet::new();
    for lab in &search.labelings {
        parities.insert(permutation_parity_between(&edge_order_of(g, lab), &base_order));
    }
    let zero_flagged = parities.len() == 2;
    let automorphisms = search.labelings.len() as u64;
    let sign = permutation_parity_between(&g.orientation, &base_order);
    (
        GraphClass {
            encoding,
            representative,
            automorphisms,
            zero_flagged,
        },
        sign,
    )
}

/// Rebuild a graph under a half-edge relabeling, with the canonical
/// orientation (edges ascending by new lesser half).
fn relabel(g: &StableRibbonGraph, new_label: &[usize]) -> StableRibbonGraph {
    let n = g.half_edges();
    let mut sigma1 = vec![usize::MAX; n];
    for h in 0..n {
        sigma1[new_label[h]] = new_label[g.sigma1[h]];
    }
    // Vertices sorted by their minimal new label; cycles by minimal new
    // label; each cycle rotated to start at its minimal new label.
    let mut vertices: Vec<(usize, Vertex)> = g
        .vertices
        .iter()
        .map(|v| {
            let mut cycles: Vec<Vec<usize>> = v
                .cycles
                .iter()
                .map(|cyc| {
                    let relabeled: Vec<usize> = cyc.iter().map(|&h| new_label[h]).collect();
                    let start = relabeled
                        .iter()
                        .enumerate()
                        .min_by_key(|(_, &l)| l)
                        .map(|(i, _)| i)
                        .unwrap();
                    (0..relabeled.len())
                        .map(|k| relabeled[(start + k) % relabeled.len()])
                        .collect()
                })
                .collect();
            cycles.sort_by_key(|c| c[0]);
            let min = cycles.iter().map(|c| c[0]).min().unwrap();
            (
                min,
                Vertex {
                    cycles,
                    genus_defect: v.genus_defect,
                    boundary_defect: v.boundary_defect,
                },
            )
        })
        .collect();
    vertices.sort_by_key(|(m, _)| *m);
    let vertices: Vec<Vertex> = vertices.into_iter().map(|(_, v)| v).collect();
    let mut orientation: Vec<usize> = (0..n).filter(|&h| h < sigma1[h]).collect();
    orientation.sort_unstable();
    StableRibbonGraph {
        edges: g.edges,
        sigma1,
        vertices,
        orientation,
    }
}

/// Count automorphisms by brute force over all structure-preserving
/// half-edge bijections (oracle; exponential, for ≤ 3-edge graphs).
pub fn automorphism_count_oracle(g: &StableRibbonGraph) -> (u64, bool) {
    let n = g.half_edges();
    let perms = permutations(n);
    let mut count = 0u64;
    let mut parities = BTreeSet::new();
    let base: Vec<usize> = g.orientation.clone();
    for p in &perms {
        if is_isomorphism(g, g, p) {
            count += 1;
            // induced edge permutation parity
            let image_order: Vec<usize> = base.iter().map(|&rep| {
                let a = p[rep];
                let b = p[g.sigma1[rep]];
                a.min(b)
            }).collect();
            parities.insert(permutation_parity_between(&image_order, &base));
        }
    }
    (count, parities.len() == 2)
}

/// Does the half-edge bijection `p` carry g1 onto g2 preserving pairing,
/// vertices, cycles with cyclic order, and defects?
pub fn is_isomorphism(g1: &StableRibbonGraph, g2: &StableRibbonGraph, p: &[usize]) -> bool {
    let n = g1.half_edges();
    if g2.half_edges() != n || p.len() != n {
        return false;
    }
    // pairing
    for h in 0..n {
        if p[g1.sigma1[h]] != g2.sigma1[p[h]] {
            return false;
        }
    }
    // vertex structure: image of each g1 vertex must be a g2 vertex with
    // equal defects and matching cycles up to rotation.
    let mut owner2 = vec![usize::MAX; n];
    for (vi, v) in g2.vertices.iter().enumerate() {
        for cyc in &v.cycles {
            for &h in cyc {
                owner2[h] = vi;
            }
        }
    }
    let mut matched = vec![false; g2.vertices.len()];
    for v1 in &g1.vertices {
        let target = owner2[p[v1.cycles[0][0]]];
        if matched[target] {
            return false;
        }
        let v2 = &g2.vertices[target];
        if v1.genus_defect != v2.genus_defect
            || v1.boundary_defect != v2.boundary_defect
            || v1.cycles.len() != v2.cycles.len()
        {
            return false;
        }
        // every half of v1 maps into v2
        for cyc in &v1.cycles {
            for &h in cyc {
                if owner2[p[h]] != target {
                    return false;
                }
            }
        }
        // cycle-by-cycle with rotation
        let mut used = vec![false; v2.cycles.len()];
        for cyc in &v1.cycles {
            let image: Vec<usize> = cyc.iter().map(|&h| p[h]).collect();
            let mut found = false;
            for (ci, c2) in v2.cycles.iter().enumerate() {
                if used[ci] || c2.len() != image.len() {
                    continue;
                }
                if cyclic_eq(&image, c2) {
                    used[ci] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        matched[target] = true;
    }
    true
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).any(|r| (0..n).all(|k| a[(r + k) % n] == b[k]))
}

/// Disjoint union: relabels the second graph's half-edges upward and
/// concatenates orientations (second graph's edges after the first's).
pub fn disjoint_union(g1: &StableRibbonGraph, g2: &StableRibbonGraph) -> StableRibbonGraph {
    let off = g1.half_edges();
    let mut sigma1 = g1.sigma1.clone();
    sigma1.extend(g2.sigma1.iter().map(|&h| h + off));
    let mut vertices = g1.vertices.clone();
    vertices.extend(g2.vertices.iter().map(|v| Vertex {
        cycles: v
            .cycles
            .iter()
            .map(|c| c.iter().map(|&h| h + off).collect())
            .collect(),
        genus_defect: v.genus_defect,
        boundary_defect: v.boundary_defect,
    }));
    let mut orientation = g1.orientation.clone();
    orientation.extend(g2.orientation.iter().map(|&e| e + off));
    StableRibbonGraph {
        edges: g1.edges + g2.edges,
        sigma1,
        vertices,
        orientation,
    }
}

/// Split into connected components. Returns the components (each with
/// compacted half-edge labels and induced orientation) and the sign of the
/// edge permutation from the input orientation to the concatenation of the
/// components' orientations.
pub fn connected_components(g: &StableRibbonGraph) -> (Vec<StableRibbonGraph>, i64) {
    let n = g.half_edges();
    if n == 0 {
        return (Vec::new(), 1);
    }
    // union-find over half-edges
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for h in 0..n {
        union(&mut parent, h, g.sigma1[h]);
    }
    for v in &g.vertices {
        let first = v.cycles[0][0];
        for cyc in &v.cycles {
            for &h in cyc {
                union(&mut parent, first, h);
            }
        }
    }
    // group vertices by component root, in order of smallest half-edge
    let mut roots: Vec<usize> = Vec::new();
    for h in 0..n {
        let r = find(&mut parent, h);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let mut comps = Vec::new();
    let mut concatenated_order: Vec<usize> = Vec::new();
    for &root in &roots {
        let halves: Vec<usize> = (0..n).filter(|&h| find(&mut parent, h) == root).collect();
        let mut new_label = BTreeMap::new();
        for (i, &h) in halves.iter().enumerate() {
            new_label.insert(h, i);
        }
        let sigma1: Vec<usize> = {
            let mut s = vec![usize::MAX; halves.len()];
            for &h in &halves {
                s[new_label[&h]] = new_label[&g.sigma1[h]];
            }
            s
        };
        let vertices: Vec<Vertex> = g
            .vertices
            .iter()
            .filter(|v| new_label.contains_key(&v.cycles[0][0]))
            .map(|v| Vertex {
                cycles: v
                    .cycles
                    .iter()
                    .map(|c| c.iter().map(|h| new_label[h]).collect())
                    .collect(),
                genus_defect: v.genus_defect,
                boundary_defect: v.boundary_defect,
            })
            .collect();
        // induced orientation: the input orientation restricted to this
        // component, expressed in new labels
        let mut orientation = Vec::new();
        for &rep in &g.orientation {
            if new_label.contains_key(&rep) {
                concatenated_order.push(rep);
                let a = new_label[&rep];
                let b = new_label[&g.sigma1[rep]];
                orientation.push(a.min(b));
            }
        }
        comps.push(StableRibbonGraph {
            edges: halves.len() / 2,
            sigma1,
            vertices,
            orientation,
        });
    }
    let sign = permutation_parity_between(&g.orientation, &concatenated_order);
    (comps, sign)
}

/// A finite rational combination of (non-zero-flagged) graph classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphChain {
    pub terms: BTreeMap<GraphClass, Q>,
}

impl GraphChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff · g`, canonicalizing and applying the orientation sign;
    /// zero-flagged classes are dropped.
    pub fn add_graph(&mut self, g: &StableRibbonGraph, coeff: Q) {
        let (class, sign) = canonical_form(g);
        if class.zero_flagged {
            return;
        }
        let c = if sign >= 0 { coeff } else { -coeff };
        add_term(&mut self.terms, class, c);
    }

    pub fn add_class(&mut self, class: GraphClass, coeff: Q) {
        if class.zero_flagged {
            return;
        }
        add_term(&mut self.terms, class, coeff);
    }

    pub fn add_in(&mut self, other: &GraphChain) {
        for (k, v) in &other.terms {
            self.add_class(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> GraphChain {
        let mut out = GraphChain::zero();
        for (k, v) in &self.terms {
            out.add_class(k.clone(), v * c);
        }
        out
    }

    /// Bilinear disjoint union of chains.
    pub fn union_product(&self, other: &GraphChain) -> GraphChain {
        let mut out = GraphChain::zero();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let u = disjoint_union(&k1.representative, &k2.representative);
                out.add_graph(&u, v1 * v2);
            }
        }
        out
    }
}

impl fmt::Display for GraphChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| format!("{v} * {}", k.encoding))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------
// Named example graphs used across tests and examples.
// ---------------------------------------------------------------------

/// The one-vertex graph with two interleaved loops: cycle (0,1,2,3) with
/// edges {0,2} and {1,3}. Surface type (1,1). Rotating the cycle by one
/// step is an automorphism that swaps the two edges, so the class is
/// zero-flagged.
pub fn interleaved_two_loop() -> StableRibbonGraph {
    StableRibbonGraph::new(
        &[(0, 2), (1, 3)],
        vec![Vertex {
            cycles: vec![vec![0, 1, 2, 3]],
            genus_defect: 0,
            boundary_defect: 0,
        }],
    )
}

/// The planar theta graph: two trivalent vertices joined by three parallel
/// edges, opposite cyclic orders. Surface type (0,3). The end-swapping
/// automorphism fixes one edge and transposes the other two, so the class
/// is zero-flagged.
pub fn theta_graph() -> StableRibbonGraph {
    StableRibbonGraph::new(
        &[(0, 3), (1, 5), (2, 4)],
        vec![
            Vertex {
                cycles: vec![vec![0, 1, 2]],
                genus_defect: 0,
                boundary_defect: 0,
            },
            Vertex {
                cycles: vec![vec![3, 4, 5]],
                genus_defect: 0,
                boundary_defect: 0,
            },
        ],
    )
}

/// The twisted theta graph: two trivalent vertices joined by three edges
/// with aligned cyclic orders, giving a single perimeter. Surface type
/// (1,1). Its six automorphisms all act evenly on the edges, so the class
/// survives.
pub fn twisted_theta_graph() -> StableRibbonGraph {
    StableRibbonGraph::new(
        &[(0, 3), (1, 4), (2, 5)],
        vec![
            Vertex {
                cycles: vec![vec![0, 1, 2]],
                genus_defect: 0,
                boundary_defect: 0,
            },
            Vertex {
                cycles: vec![vec![3, 4, 5]],
                genus_defect: 0,
                boundary_defect: 0,
            },
        ],
    )
}

/// One vertex, one cycle (0,1,2,3) with adjacent (non-interleaved) loops
/// {0,1} and {2,3}: carries an orientation-reversing automorphism, so its
/// class is zero-flagged. Surface type (0,3).
pub fn adjacent_two_loop() -> StableRibbonGraph {
    StableRibbonGraph::new(
        &[(0, 1), (2, 3)],
        vec![Vertex {
            cycles: vec![vec![0, 1, 2, 3]],
            genus_defect: 0,
            boundary_defect: 0,
        }],
    )
}
