//! Finite directed graphs, Cayley graphs, graph connectivity, openly disjoint
//! paths via unit-capacity flows, and the strong isoperimetric matchings.
//!
//! Graphs are capped at 64 vertices so vertex sets are single words, matching
//! the group-side encoding.

use crate::error::Error;
use crate::group::{word_mask, AbelianGroup, GroupSubset, QuotientView, Subgroup};
use crate::Result;

/// A finite digraph stored as one image bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: u32,
    adj: Vec<u64>,
}

impl Digraph {
    pub fn new(n: usize) -> Result<Digraph> {
        if n > 64 {
            return Err(Error::GraphTooLarge(n));
        }
        Ok(Digraph {
            n: n as u32,
            adj: vec![0; n],
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn add_arc(&mut self, u: u32, v: u32) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v));
        }
        self.adj[u as usize] |= 1u64 << v;
        Ok(())
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        u < self.n && v < self.n && self.adj[u as usize] >> v & 1 == 1
    }

    /// Image of a single vertex.
    pub fn image_of(&self, v: u32) -> u64 {
        self.adj[v as usize]
    }

    /// Image of a vertex set: the union of the images of its members.
    pub fn image(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            out |= self.adj[v as usize];
            rest &= rest - 1;
        }
        out
    }

    /// Boundary of a vertex set: `image(X) \ X`.
    pub fn boundary(&self, set: u64) -> u64 {
        self.image(set) & !set
    }

    pub fn valency(&self, v: u32) -> u32 {
        self.adj[v as usize].count_ones()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_arc(v, v))
    }

    /// Text format: first line the vertex count, then one arc "u v" per line.
    pub fn from_text(s: &str) -> Result<Digraph> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty digraph text".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad vertex count".into()))?;
        let mut d = Digraph::new(n)?;
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad arc line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad arc line {line:?}")))?;
            let v: u32 = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad arc line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad arc line {line:?}")))?;
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for u in 0..self.n {
            let mut rest = self.adj[u as usize];
            while rest != 0 {
                let v = rest.trailing_zeros();
                out.push_str(&format!("{u} {v}\n"));
                rest &= rest - 1;
            }
        }
        out
    }
}

/// Cayley graph of a generating subset containing 0: vertex per group
/// element, arc `(x, x + s)` for each `s` in S. Reflexive since 0 is in S.
pub fn cayley_graph(g: &AbelianGroup, s: &GroupSubset) -> Result<Digraph> {
    if s.group() != g {
        return Err(Error::GroupMismatch);
    }
    if !s.contains(0) {
        return Err(Error::ZeroNotInS);
    }
    if g.closure_bits(s.bits()) != word_mask(g.order()) {
        return Err(Error::NotGenerating);
    }
    Ok(cayley_unchecked(g, s.bits()))
}

pub(crate) fn cayley_unchecked(g: &AbelianGroup, s_bits: u64) -> Digraph {
    Digraph {
        n: g.order(),
        adj: (0..g.order()).map(|x| g.translate_bits(s_bits, x)).collect(),
    }
}

/// Graph 1-connectivity: the minimum `|boundary(X)|` over nonempty vertex
/// sets whose image misses at least one vertex; `None` when no such set
/// exists. Enumerates every subset, pruning once the image covers V.
pub fn graph_kappa1(d: &Digraph) -> Option<u32> {
    let n = d.n;
    let full = word_mask(n);
    let mut best: Option<u32> = None;
    fn rec(d: &Digraph, x: u64, img: u64, from: u32, full: u64, best: &mut Option<u32>) {
        if x != 0 && img != full {
            let bdy = (img & !x).count_ones();
            if best.is_none_or(|b| bdy < b) {
                *best = Some(bdy);
            }
        }
        for v in from..d.n {
            let nimg = img | d.adj[v as usize];
            if nimg == full {
                // images only grow along the subtree, so no descendant can
                // regain a nonempty co-image
                continue;
            }
            rec(d, x | (1u64 << v), nimg, v + 1, full, best);
        }
    }
    rec(d, 0, 0, 0, full, &mut best);
    best
}

/// A system of openly disjoint paths between two vertices; each path lists
/// its vertices from `x` to `y`.
#[derive(Clone, Debug)]
pub struct DisjointPathSystem {
    pub x: u32,
    pub y: u32,
    pub paths: Vec<Vec<u32>>,
}

impl DisjointPathSystem {
    /// Endpoint correctness, arc membership, and open disjointness.
    pub fn validate(&self, d: &Digraph) -> bool {
        let mut internal_seen = 0u64;
        for p in &self.paths {
            if p.len() < 2 || p[0] != self.x || *p.last().unwrap() != self.y {
                return false;
            }
            for w in p.windows(2) {
                if !d.has_arc(w[0], w[1]) {
                    return false;
                }
            }
            for &v in &p[1..p.len() - 1] {
                if v == self.x || v == self.y || internal_seen >> v & 1 == 1 {
                    return false;
                }
                internal_seen |= 1u64 << v;
            }
        }
        true
    }
}

// ---- unit-capacity flow engine ----

#[derive(Clone, Copy)]
struct FlowEdge {
    to: u32,
    rev: u32,
    cap: u32,
    orig: u32,
}

struct FlowNet {
    graph: Vec<Vec<FlowEdge>>,
}

impl FlowNet {
    fn new(nodes: usize) -> FlowNet {
        FlowNet {
            graph: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: u32) {
        let ru = self.graph[v].len() as u32;
        let rv = self.graph[u].len() as u32;
        self.graph[u].push(FlowEdge {
            to: v as u32,
            rev: ru,
            cap,
            orig: cap,
        });
        self.graph[v].push(FlowEdge {
            to: u as u32,
            rev: rv,
            cap: 0,
            orig: 0,
        });
    }

    /// One augmentation along a shortest residual path (deterministic BFS in
    /// insertion order). Returns false when the sink is unreachable.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.graph.len();
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; n]; // (node, edge idx)
        let mut visited = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        visited[s] = true;
        queue.push_back(s);
        'bfs: while let Some(u) = queue.pop_front() {
            for (i, e) in self.graph[u].iter().enumerate() {
                if e.cap > 0 && !visited[e.to as usize] {
                    visited[e.to as usize] = true;
                    parent[e.to as usize] = Some((u as u32, i as u32));
                    if e.to as usize == t {
                        break 'bfs;
                    }
                    queue.push_back(e.to as usize);
                }
            }
        }
        if !visited[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let (u, i) = parent[v].unwrap();
            let (u, i) = (u as usize, i as usize);
            self.graph[u][i].cap -= 1;
            let rev = self.graph[u][i].rev as usize;
            self.graph[v][rev].cap += 1;
            v = u;
        }
        true
    }

    fn max_flow_limited(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    /// Units of flow used on edge `i` out of node `u`.
    fn used(&self, u: usize, i: usize) -> u32 {
        self.graph[u][i].orig - self.graph[u][i].cap
    }

    /// Walks one unit of flow from `s` to `t`, consuming it; nodes visited in
    /// order. Flow conservation guarantees termination at `t`.
    fn extract_path(&mut self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut path = vec![s as u32];
        let mut u = s;
        while u != t {
            let mut advanced = false;
            for i in 0..self.graph[u].len() {
                if self.graph[u][i].orig > 0 && self.used(u, i) > 0 {
                    self.graph[u][i].cap += 1; // consume one used unit
                    u = self.graph[u][i].to as usize;
                    path.push(u as u32);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return None;
            }
        }
        Some(path)
    }
}

/// Looks for `k` openly disjoint paths from `x` to `y`, via a vertex-split
/// unit-capacity flow with shortest augmenting paths. Loops are ignored.
pub fn disjoint_paths(
    d: &Digraph,
    x: u32,
    y: u32,
    k: u32,
) -> Result<Option<DisjointPathSystem>> {
    if x >= d.n {
        return Err(Error::VertexOutOfRange(x));
    }
    if y >= d.n {
        return Err(Error::VertexOutOfRange(y));
    }
    if k == 0 {
        return Ok(Some(DisjointPathSystem {
            x,
            y,
            paths: Vec::new(),
        }));
    }
    // node 2v = in(v), 2v+1 = out(v); endpoints carry no through-capacity so
    // no path revisits x or y internally
    let n = d.n as usize;
    let mut net = FlowNet::new(2 * n);
    for v in 0..d.n {
        let cap = if v == x || v == y { 0 } else { 1 };
        net.add_edge(2 * v as usize, 2 * v as usize + 1, cap);
    }
    for u in 0..d.n {
        let mut rest = d.adj[u as usize] & !(1u64 << u);
        while rest != 0 {
            let v = rest.trailing_zeros();
            net.add_edge(2 * u as usize + 1, 2 * v as usize, 1);
            rest &= rest - 1;
        }
    }
    let source = 2 * x as usize + 1;
    let sink = 2 * y as usize;
    if net.max_flow_limited(source, sink, k) < k {
        return Ok(None);
    }
    let mut paths = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let raw = net
            .extract_path(source, sink)
            .expect("flow decomposition yields k source-sink paths");
        // collapse split nodes back to vertices: in-halves are even ids
        let mut verts = vec![x];
        verts.extend(raw[1..].iter().filter(|&&n| n % 2 == 0).map(|&n| n / 2));
        paths.push(verts);
    }
    let system = DisjointPathSystem { x, y, paths };
    debug_assert!(system.validate(d));
    Ok(Some(system))
}

/// An injection from a subset of X into boundary vertices along arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatching {
    /// (c, f(c)) pairs sorted by c; every f(c) is distinct and in boundary(X).
    pub pairs: Vec<(u32, u32)>,
}

impl BoundaryMatching {
    pub fn domain(&self) -> Vec<u32> {
        self.pairs.iter().map(|&(c, _)| c).collect()
    }
}

/// Independent validator: injectivity, arc membership, boundary membership,
/// domain inside X.
pub fn validate_matching(d: &Digraph, x_set: u64, m: &BoundaryMatching) -> bool {
    let bdy = d.boundary(x_set);
    let mut used = 0u64;
    for &(c, b) in &m.pairs {
        if x_set >> c & 1 == 0 || bdy >> b & 1 == 0 || !d.has_arc(c, b) || used >> b & 1 == 1 {
            return false;
        }
        used |= 1u64 << b;
    }
    true
}

/// The strong isoperimetric matching: a `kappa_1(Gamma)`-subset `C` of `X`
/// and an injection of `C` into `boundary(X)` along arcs, built on the
/// auxiliary graph `{alpha} ∪ X ∪ boundary(X) ∪ {beta}` with unit vertex
/// capacities and disjoint-path extraction.
pub fn sipg_matching(d: &Digraph, x_set: u64) -> Result<BoundaryMatching> {
    let k = graph_kappa1(d)
        .ok_or_else(|| Error::HypothesesUnmet("kappa_1 of the graph is undefined".into()))?;
    sipg_matching_with_k(d, k, x_set)
}

/// The matching with the connectivity supplied by the caller; sweeps compute
/// it once per graph.
pub fn sipg_matching_with_k(d: &Digraph, k: u32, x_set: u64) -> Result<BoundaryMatching> {
    let full = word_mask(d.n);
    if x_set & !full != 0 {
        return Err(Error::VertexOutOfRange(63 - x_set.leading_zeros()));
    }
    let cx = x_set.count_ones();
    if cx < k {
        return Err(Error::HypothesesUnmet(format!(
            "|X| = {cx} is below kappa_1 = {k}"
        )));
    }
    if cx + k > d.n {
        return Err(Error::HypothesesUnmet(format!(
            "|X| + kappa_1 = {} exceeds |V| = {}",
            cx + k,
            d.n
        )));
    }
    sipg_on_aux(d, x_set, k, None).map(|pairs| BoundaryMatching { pairs })
}

/// Shared auxiliary-graph flow for both matching forms. `boost` marks one
/// X-vertex whose capacity is raised (the duplication construction); without
/// it the graph carries the X-to-X arcs of the image and paths are shortcut
/// to their final arc.
fn sipg_on_aux(
    d: &Digraph,
    x_set: u64,
    k: u32,
    boost: Option<(u32, u32)>,
) -> Result<Vec<(u32, u32)>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let bdy = d.boundary(x_set);
    let xs: Vec<u32> = bits_vec(x_set);
    let bs: Vec<u32> = bits_vec(bdy);
    // aux nodes: alpha, split X vertices, boundary vertices, beta
    let alpha = 0usize;
    let x_in = |i: usize| 1 + 2 * i;
    let x_out = |i: usize| 2 + 2 * i;
    let b_node = |j: usize| 1 + 2 * xs.len() + j;
    let beta = 1 + 2 * xs.len() + bs.len();
    let mut net = FlowNet::new(beta + 1);
    let xpos = |v: u32| xs.binary_search(&v).ok();
    let bpos = |v: u32| bs.binary_search(&v).ok();
    for (i, &v) in xs.iter().enumerate() {
        let cap = match boost {
            Some((bv, bc)) if bv == v => bc,
            _ => 1,
        };
        net.add_edge(alpha, x_in(i), cap);
        net.add_edge(x_in(i), x_out(i), cap);
        let mut rest = d.adj[v as usize] & !(1u64 << v);
        while rest != 0 {
            let w = rest.trailing_zeros();
            if boost.is_none() {
                if let Some(j) = xpos(w) {
                    net.add_edge(x_out(i), x_in(j), 1);
                }
            }
            if let Some(j) = bpos(w) {
                net.add_edge(x_out(i), b_node(j), 1);
            }
            rest &= rest - 1;
        }
    }
    for j in 0..bs.len() {
        net.add_edge(b_node(j), beta, 1);
    }
    let found = net.max_flow_limited(alpha, beta, k);
    if found < k {
        return Err(Error::MatchingShortfall {
            required: k,
            found,
        });
    }
    let mut pairs = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let raw = net
            .extract_path(alpha, beta)
            .expect("flow decomposition yields k alpha-beta paths");
        // last aux node before beta is a boundary vertex; the node before it
        // is the out-half of the last X vertex on the path
        let b = bs[raw[raw.len() - 2] as usize - (1 + 2 * xs.len())];
        let cx_out = raw[raw.len() - 3] as usize;
        let c = xs[(cx_out - 2) / 2];
        pairs.push((c, b));
    }
    pairs.sort_unstable();
    Ok(pairs)
}

fn bits_vec(bits: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(bits.count_ones() as usize);
    let mut rest = bits;
    while rest != 0 {
        v.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    v
}

/// Second form of the strong isoperimetric property, for `|X| <= kappa_1`:
/// `k` arc pairs with distinct boundary endpoints, every X vertex used, and
/// the designated vertex `x` reused for the surplus. Returns the pairs
/// ordered with the other X vertices first and the copies of `x` last.
pub fn sip2_matching(d: &Digraph, x_set: u64, x: u32) -> Result<Vec<(u32, u32)>> {
    let k = graph_kappa1(d)
        .ok_or_else(|| Error::HypothesesUnmet("kappa_1 of the graph is undefined".into()))?;
    sip2_matching_with_k(d, k, x_set, x)
}

pub fn sip2_matching_with_k(d: &Digraph, k: u32, x_set: u64, x: u32) -> Result<Vec<(u32, u32)>> {
    if x >= d.n {
        return Err(Error::VertexOutOfRange(x));
    }
    if x_set >> x & 1 == 0 {
        return Err(Error::HypothesesUnmet("x must lie in X".into()));
    }
    let cx = x_set.count_ones();
    if cx > k {
        return Err(Error::HypothesesUnmet(format!(
            "|X| = {cx} exceeds kappa_1 = {k}"
        )));
    }
    if cx + k > d.n {
        return Err(Error::HypothesesUnmet(format!(
            "|X| + kappa_1 = {} exceeds |V| = {}",
            cx + k,
            d.n
        )));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let surplus = k - cx + 1;
    let mut pairs = sipg_on_aux(d, x_set, k, Some((x, surplus)))?;
    // order: X \ {x} ascending, then the copies of x
    pairs.sort_by_key(|&(c, b)| (c == x, c, b));
    Ok(pairs)
}

/// Strong isoperimetric property on the group side: from a matching on the
/// quotient Cayley graph, pairs `(C, D_C)` of an H-component of T and an
/// H-component of S whose sums span distinct T-external components of T + S.
pub fn strongip_components(
    h: &Subgroup,
    s: &GroupSubset,
    t: &GroupSubset,
) -> Result<Vec<(GroupSubset, GroupSubset)>> {
    let g = h.group().clone();
    if s.group() != &g || t.group() != &g {
        return Err(Error::GroupMismatch);
    }
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptySet);
    }
    if !s.contains(0) {
        return Err(Error::ZeroNotInS);
    }
    let qv = QuotientView::new(h);
    let q = qv.quotient_group().clone();
    let qs = qv.map_bits(s.bits());
    let qt = qv.map_bits(t.bits());
    let u = qs.count_ones() - 1;
    if u == 0 {
        return Ok(Vec::new());
    }
    if qs.count_ones() + qt.count_ones() > q.order() + 1 {
        return Err(Error::HypothesesUnmet(format!(
            "|phi(S)| + |phi(T)| = {} exceeds |G/H| + 1 = {}",
            qs.count_ones() + qt.count_ones(),
            q.order() + 1
        )));
    }
    let gamma = cayley_unchecked(&q, qs);
    match graph_kappa1(&gamma) {
        Some(k) if k == u => {}
        other => {
            return Err(Error::HypothesesUnmet(format!(
                "kappa_1(phi(S)) = {other:?}, expected |phi(S)| - 1 = {u}"
            )));
        }
    }
    let matching = sipg_matching(&gamma, qt)?;
    let mut out = Vec::with_capacity(matching.pairs.len());
    for &(c, b) in &matching.pairs {
        let sbar = q.sub(b, c);
        debug_assert!(qs >> sbar & 1 == 1, "matching arc must come from phi(S)");
        debug_assert!(qt >> b & 1 == 0, "spanned coset must be T-external");
        let comp_t = g.subset_from_bits(t.bits() & qv.coset_bits(c));
        let comp_s = g.subset_from_bits(s.bits() & qv.coset_bits(sbar));
        out.push((comp_t, comp_s));
    }
    Ok(out)
}

/// Deterministic pseudo-random digraph. The generator is the 64-bit LCG
/// `state <- state * 6364136223846793005 + 1442695040888963407`; scanning
/// ordered pairs (u, v) row by row (loops included), the arc is present when
/// `(state >> 33) % 100 < density_percent` after advancing the state once.
pub fn seeded_digraph(n: usize, density_percent: u32, seed: u64) -> Result<Digraph> {
    let mut d = Digraph::new(n)?;
    let mut state = seed;
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            state = lcg_next(state);
            if (state >> 33) % 100 < density_percent as u64 {
                d.add_arc(u, v)?;
            }
        }
    }
    Ok(d)
}

#[inline]
pub fn lcg_next(state: u64) -> u64 {
    state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::new(&[n]).unwrap()
    }

    fn sub(g: &AbelianGroup, idx: &[u32]) -> GroupSubset {
        g.subset_from_indices(idx).unwrap()
    }

    #[test]
    fn cayley_examples() {
        let g = z(5);
        let d = cayley_graph(&g, &sub(&g, &[0, 1])).unwrap();
        assert_eq!(d.vertex_count(), 5);
        for x in 0..5 {
            assert_eq!(d.image_of(x), 1u64 << x | 1u64 << ((x + 1) % 5));
        }
        let g6 = z(6);
        let d = cayley_graph(&g6, &sub(&g6, &[0, 1, 3])).unwrap();
        assert!((0..6).all(|v| d.valency(v) == 3));
        assert!(d.is_reflexive());
        assert!(matches!(
            cayley_graph(&g6, &sub(&g6, &[1])),
            Err(Error::ZeroNotInS)
        ));
        assert!(matches!(
            cayley_graph(&g6, &sub(&g6, &[0, 2])),
            Err(Error::NotGenerating)
        ));
    }

    #[test]
    fn graph_kappa_examples() {
        let g = z(5);
        let d = cayley_graph(&g, &sub(&g, &[0, 1])).unwrap();
        assert_eq!(graph_kappa1(&d), Some(1));
        let g6 = z(6);
        let d = cayley_graph(&g6, &sub(&g6, &[0, 1, 3])).unwrap();
        assert_eq!(graph_kappa1(&d), Some(2));
        // complete reflexive graph: every image covers V
        let mut k4 = Digraph::new(4).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                k4.add_arc(u, v).unwrap();
            }
        }
        assert_eq!(graph_kappa1(&k4), None);
    }

    #[test]
    fn disjoint_path_examples() {
        // two parallel length-2 paths
        let mut d = Digraph::new(4).unwrap();
        d.add_arc(0, 1).unwrap();
        d.add_arc(1, 3).unwrap();
        d.add_arc(0, 2).unwrap();
        d.add_arc(2, 3).unwrap();
        let sys = disjoint_paths(&d, 0, 3, 2).unwrap().unwrap();
        assert_eq!(sys.paths.len(), 2);
        assert!(sys.validate(&d));
        assert!(disjoint_paths(&d, 0, 3, 3).unwrap().is_none());

        let g = z(5);
        let d = cayley_graph(&g, &sub(&g, &[0, 1])).unwrap();
        let sys = disjoint_paths(&d, 0, 2, 1).unwrap().unwrap();
        assert_eq!(sys.paths, vec![vec![0, 1, 2]]);
        assert!(disjoint_paths(&d, 0, 2, 2).unwrap().is_none());
        assert!(matches!(
            disjoint_paths(&d, 0, 9, 1),
            Err(Error::VertexOutOfRange(9))
        ));
        // k = 0 always succeeds
        assert!(disjoint_paths(&d, 0, 2, 0).unwrap().is_some());
    }

    #[test]
    fn menger_against_cut_oracle() {
        // max disjoint paths = min separating boundary, across seeded graphs
        for seed in 1..=20u64 {
            let d = seeded_digraph(6, 40, seed).unwrap();
            let adj: Vec<u64> = (0..6).map(|v| d.image_of(v)).collect();
            for x in 0..6u32 {
                for y in 0..6u32 {
                    if x == y || d.has_arc(x, y) {
                        continue;
                    }
                    let cut = oracle::min_menger_cut(&adj, x, y);
                    let mut max_k = 0;
                    while disjoint_paths(&d, x, y, max_k + 1).unwrap().is_some() {
                        max_k += 1;
                    }
                    assert_eq!(
                        Some(max_k),
                        cut,
                        "x={x} y={y} seed={seed}\n{}",
                        d.to_text()
                    );
                }
            }
        }
    }

    #[test]
    fn sipg_examples() {
        let g = z(5);
        let d = cayley_graph(&g, &sub(&g, &[0, 1])).unwrap();
        let m = sipg_matching(&d, 0b101).unwrap(); // X = {0, 2}
        assert_eq!(m.pairs, vec![(0, 1)]);
        assert!(validate_matching(&d, 0b101, &m));

        let g6 = z(6);
        let d = cayley_graph(&g6, &sub(&g6, &[0, 1, 3])).unwrap();
        let m = sipg_matching(&d, 0b1001).unwrap(); // X = {0, 3}
        assert_eq!(m.pairs, vec![(0, 1), (3, 4)]);
        assert!(validate_matching(&d, 0b1001, &m));

        // |X| + k > |V|
        assert!(matches!(
            sipg_matching(&d, 0b11111),
            Err(Error::HypothesesUnmet(_))
        ));
    }

    #[test]
    fn sip2_examples() {
        let g6 = z(6);
        let d = cayley_graph(&g6, &sub(&g6, &[0, 1, 3])).unwrap();
        let pairs = sip2_matching(&d, 0b1, 0).unwrap(); // X = {0}, k = 2
        assert_eq!(pairs, vec![(0, 1), (0, 3)]);

        // |X| = k: same shape as the first form
        let pairs = sip2_matching(&d, 0b1001, 0).unwrap();
        assert_eq!(pairs.len(), 2);
        let m = sipg_matching(&d, 0b1001).unwrap();
        assert_eq!(pairs.iter().copied().collect::<std::collections::BTreeSet<_>>(),
                   m.pairs.iter().copied().collect());

        // directed cycle with loops: k = 1, single successor pair
        let g5 = z(5);
        let d = cayley_graph(&g5, &sub(&g5, &[0, 1])).unwrap();
        let pairs = sip2_matching(&d, 0b100, 2).unwrap();
        assert_eq!(pairs, vec![(2, 3)]);
    }

    #[test]
    fn strongip_example() {
        let g = z(12);
        let h = Subgroup::try_from_set(sub(&g, &[0, 6])).unwrap();
        let s = sub(&g, &[0, 1, 6]);
        let t = sub(&g, &[0, 6, 7]);
        let pairs = strongip_components(&h, &s, &t).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0.indices(), [7]);
        assert_eq!(pairs[0].1.indices(), [1]);
        // the spanned component sits in the coset 8 + H, external to T + H
        let span = g.sum_bits(pairs[0].0.bits(), pairs[0].1.bits());
        assert_eq!(span, 1u64 << 8);
        let t_plus_h = g.sum_bits(t.bits(), h.bits());
        assert_eq!(g.sum_bits(span, h.bits()) & t_plus_h, 0);

        // |phi(S)| = 1: vacuously empty
        let s1 = sub(&g, &[0, 6]);
        assert!(strongip_components(&h, &s1, &t).unwrap().is_empty());

        // corrected cardinality condition violated
        let g4 = z(4);
        let h4 = Subgroup::trivial(&g4);
        let s4 = sub(&g4, &[0, 1, 2]);
        let t4 = sub(&g4, &[0, 1, 2, 3]);
        assert!(matches!(
            strongip_components(&h4, &s4, &t4),
            Err(Error::HypothesesUnmet(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let d = seeded_digraph(5, 35, 7).unwrap();
        let d2 = Digraph::from_text(&d.to_text()).unwrap();
        assert_eq!(d, d2);
        assert!(Digraph::from_text("not a graph").is_err());
        assert!(Digraph::new(65).is_err());
    }

    #[test]
    fn seeded_digraph_is_deterministic() {
        let a = seeded_digraph(8, 30, 42).unwrap();
        let b = seeded_digraph(8, 30, 42).unwrap();
        assert_eq!(a, b);
        let c = seeded_digraph(8, 30, 43).unwrap();
        assert_ne!(a, c);
    }
}
