//! Small graphs as adjacency bitmasks, ADE shapes, and induced embeddings.

use std::ops::ControlFlow;

/// ADE family of a root system component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// Edges of the finite Dynkin diagram on vertices `0..n`.
///
/// `A_n` is the path; `D_n` is the path `0..n-1` with vertex `n-1` hung on
/// `n-3`; `E_n` is the path `0..n-1` with vertex `n-1` hung on `2`.
pub fn shape_edges(family: Family, n: usize) -> Vec<(usize, usize)> {
    let path_len = match family {
        Family::A => n,
        Family::D | Family::E => n - 1,
    };
    let mut edges: Vec<(usize, usize)> = (1..path_len).map(|i| (i - 1, i)).collect();
    match family {
        Family::A => {}
        Family::D => edges.push((n - 3, n - 1)),
        Family::E => edges.push((2, n - 1)),
    }
    edges
}

/// An undirected graph on at most 64 vertices.
///
/// `adj` holds simple (weight 1) edges, `heavy` holds pairs meeting with
/// intersection number 2 or more. A pair is in at most one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    heavy: Vec<u64>,
    /// Vertices with equal nonzero labels lie in isomorphic components laid
    /// out identically; used only to break symmetry when this graph is the
    /// source of an embedding.
    labels: Vec<u32>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "graphs are limited to 64 vertices");
        Graph { n, adj: vec![0; n], heavy: vec![0; n], labels: vec![0; n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn add_heavy_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        self.heavy[u] |= 1 << v;
        self.heavy[v] |= 1 << u;
    }

    /// Appends `k` isolated vertices; returns the index of the first.
    pub fn add_vertices(&mut self, k: usize) -> usize {
        let base = self.n;
        self.n += k;
        assert!(self.n <= 64, "graphs are limited to 64 vertices");
        self.adj.resize(self.n, 0);
        self.heavy.resize(self.n, 0);
        self.labels.resize(self.n, 0);
        base
    }

    /// Appends a copy of an ADE diagram; returns the index of its first vertex.
    pub fn add_shape(&mut self, family: Family, n: usize, label: u32) -> usize {
        let base = self.add_vertices(n);
        for (u, v) in shape_edges(family, n) {
            self.add_edge(base + u, base + v);
        }
        for l in &mut self.labels[base..] {
            *l = label;
        }
        base
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn heavy(&self, u: usize, v: usize) -> bool {
        self.heavy[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    /// Connected components (through simple and heavy edges), each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v] | self.heavy[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// Placement plan for the source graph.
struct Plan {
    order: Vec<usize>,
    /// Position of the already placed neighbor each vertex hangs off.
    parent: Vec<Option<usize>>,
    /// Source neighbors among earlier positions, as a position bitmask.
    back: Vec<u64>,
    /// For a component root: the position of the previous identical root.
    sym_prev: Vec<Option<usize>>,
    degree: Vec<u32>,
}

fn plan(src: &Graph) -> Plan {
    let mut comps = src.components();
    // big components first; the sort is stable so identical ones stay adjacent
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(src.n);
    let mut parent = Vec::with_capacity(src.n);
    let mut sym_prev = Vec::with_capacity(src.n);
    let mut pos_of = vec![usize::MAX; src.n];
    let mut prev_root: Option<(usize, usize, u32)> = None; // (position, size, label)
    for comp in &comps {
        // start from a vertex of maximal degree
        let start = *comp.iter().max_by_key(|&&v| (src.degree(v), std::cmp::Reverse(v))).unwrap();
        let root_pos = order.len();
        let label = src.labels[start];
        let same = matches!(prev_root, Some((_, len, l)) if l != 0 && l == label && len == comp.len());
        sym_prev.push(if same { prev_root.map(|p| p.0) } else { None });
        prev_root = Some((root_pos, comp.len(), label));
        order.push(start);
        parent.push(None);
        pos_of[start] = root_pos;
        let mut head = root_pos;
        while head < order.len() {
            let v = order[head];
            for w in bits(src.adj[v]) {
                if pos_of[w] == usize::MAX {
                    pos_of[w] = order.len();
                    order.push(w);
                    parent.push(Some(head));
                    sym_prev.push(None);
                }
            }
            head += 1;
        }
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(p, &v)| bits(src.adj[v]).map(|w| pos_of[w]).filter(|&q| q < p).fold(0u64, |m, q| m | 1 << q))
        .collect();
    let degree = order.iter().map(|&v| src.degree(v)).collect();
    Plan { order, parent, back, sym_prev, degree }
}

/// Induced embedding search in the weighted sense: source edges go to simple
/// target edges, source non-edges go to pairs with no intersection at all.
///
/// `forbidden` removes target vertices. `keep` is called with the image set
/// after each placement and may reject monotone failures early. `visit`
/// receives each full embedding indexed by source vertex.
pub fn for_each_embedding<K, V>(src: &Graph, dst: &Graph, forbidden: u64, mut keep: K, mut visit: V) -> ControlFlow<()>
where
    K: FnMut(u64) -> bool,
    V: FnMut(&[usize]) -> ControlFlow<()>,
{
    if src.n > dst.n {
        return ControlFlow::Continue(());
    }
    let plan = plan(src);
    let all = if dst.n == 64 { u64::MAX } else { (1u64 << dst.n) - 1 };
    let mut img = vec![0usize; src.n];
    let mut out = vec![0usize; src.n];
    search(src, dst, &plan, 0, 0, all & !forbidden, &mut img, &mut out, &mut keep, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn search<K, V>(
    src: &Graph,
    dst: &Graph,
    plan: &Plan,
    pos: usize,
    used: u64,
    allowed: u64,
    img: &mut [usize],
    out: &mut [usize],
    keep: &mut K,
    visit: &mut V,
) -> ControlFlow<()>
where
    K: FnMut(u64) -> bool,
    V: FnMut(&[usize]) -> ControlFlow<()>,
{
    if pos == src.n {
        for (p, &v) in plan.order.iter().enumerate() {
            out[v] = img[p];
        }
        return visit(out);
    }
    let mut cand = match plan.parent[pos] {
        Some(q) => dst.adj[img[q]],
        None => u64::MAX,
    } & allowed
        & !used;
    if let Some(q) = plan.sym_prev[pos] {
        // only images above the previous identical root
        let floor = img[q] + 1;
        cand &= if floor >= 64 { 0 } else { !((1u64 << floor) - 1) };
    }
    let expected = bits(plan.back[pos]).fold(0u64, |m, q| m | 1 << img[q]);
    for t in bits(cand) {
        if dst.adj[t] & used != expected || dst.heavy[t] & used != 0 || dst.degree(t) < plan.degree[pos] {
            continue;
        }
        let now = used | 1 << t;
        if !keep(now) {
            continue;
        }
        img[pos] = t;
        search(src, dst, plan, pos + 1, now, allowed, img, out, keep, visit)?;
    }
    ControlFlow::Continue(())
}

/// First induced embedding of `src` into `dst`, if any.
pub fn find_embedding(src: &Graph, dst: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_embedding(src, dst, 0, |_| true, |f| {
        found = Some(f.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Whether `f` is an induced embedding in the weighted sense.
pub fn is_induced_embedding(src: &Graph, dst: &Graph, f: &[usize]) -> bool {
    if f.len() != src.n {
        return false;
    }
    let mut seen = 0u64;
    for &t in f {
        if t >= dst.n || seen >> t & 1 == 1 {
            return false;
        }
        seen |= 1 << t;
    }
    for u in 0..src.n {
        for v in u + 1..src.n {
            if dst.heavy(f[u], f[v]) || src.adjacent(u, v) != dst.adjacent(f[u], f[v]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(f: Family, n: usize) -> Graph {
        let mut g = Graph::new(0);
        g.add_shape(f, n, 1);
        g
    }

    #[test]
    fn shapes() {
        let d4 = shape(Family::D, 4);
        assert_eq!(d4.edge_count(), 3);
        assert_eq!((0..4).map(|v| d4.degree(v)).max(), Some(3));
        let e8 = shape(Family::E, 8);
        assert_eq!(e8.edge_count(), 7);
        assert_eq!((0..8).filter(|&v| e8.degree(v) == 3).count(), 1);
        let e6 = shape(Family::E, 6);
        let centre = (0..6).find(|&v| e6.degree(v) == 3).unwrap();
        assert_eq!(centre, 2);
    }

    #[test]
    fn simple_embeddings() {
        assert!(find_embedding(&shape(Family::A, 2), &shape(Family::A, 3)).is_some());
        for n in 1..10 {
            assert!(find_embedding(&shape(Family::D, 4), &shape(Family::A, n)).is_none());
        }
        let mut two = Graph::new(0);
        two.add_shape(Family::A, 1, 7);
        two.add_shape(Family::A, 1, 7);
        let f = find_embedding(&two, &shape(Family::A, 3)).unwrap();
        assert!(is_induced_embedding(&two, &shape(Family::A, 3), &f));
        assert!(find_embedding(&two, &shape(Family::A, 2)).is_none());
    }

    #[test]
    fn heavy_pairs_are_never_used() {
        let mut g = Graph::new(2);
        g.add_heavy_edge(0, 1);
        assert!(find_embedding(&shape(Family::A, 2), &g).is_none());
        let mut two = Graph::new(0);
        two.add_shape(Family::A, 1, 1);
        two.add_shape(Family::A, 1, 1);
        assert!(find_embedding(&two, &g).is_none());
        assert!(find_embedding(&shape(Family::A, 1), &g).is_some());
    }

    #[test]
    fn symmetry_breaking_keeps_one_per_orbit() {
        // 2A1 into 4 isolated vertices: C(4,2) = 6 unordered placements
        let mut two = Graph::new(0);
        two.add_shape(Family::A, 1, 3);
        two.add_shape(Family::A, 1, 3);
        let dst = Graph::new(4);
        let mut count = 0;
        let _ = for_each_embedding(&two, &dst, 0, |_| true, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
    }
}
