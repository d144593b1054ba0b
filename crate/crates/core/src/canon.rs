//! Canonical labeling of vertex-colored graphs.
//!
//! Individualization–refinement in the style of McKay: equitable refinement
//! of an ordered partition, a search tree that individualizes vertices of the
//! first smallest non-singleton cell, pruning by automorphisms found at the
//! leaves, and the lexicographically smallest relabeled adjacency as the
//! canonical form.

use std::collections::VecDeque;

use num_bigint::BigUint;

/// Simple undirected graph with a color class per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    colors: Vec<u32>,
}

impl Graph {
    /// Edgeless graph with the given vertex colors.
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            colors,
        }
    }

    /// Edgeless single-color graph.
    pub fn uncolored(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of vertices in each color class `0..=max color`.
    pub fn color_sizes(&self) -> Vec<usize> {
        let k = self.colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut sizes = vec![0; k];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Adds the edge `{a, b}`; loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.adj[a * self.words + b / 64] |= 1 << (b % 64);
        self.adj[b * self.words + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(k * 64 + b)
            })
        })
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        let mut colors = vec![0; self.n];
        for v in 0..self.n {
            colors[perm[v]] = self.colors[v];
        }
        let mut g = Graph::new(colors);
        for a in 0..self.n {
            for b in self.neighbors(a) {
                if a < b {
                    g.add_edge(perm[a], perm[b]);
                }
            }
        }
        g
    }
}

/// Result of canonical labeling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonCertificate {
    form: Vec<u64>,
    /// `labeling[p]` is the input vertex that receives canonical label `p`.
    pub labeling: Vec<usize>,
    /// Exact order of the color-preserving automorphism group.
    pub aut_order: BigUint,
    /// Orbit representative (smallest member) for each vertex.
    pub orbits: Vec<usize>,
}

impl CanonCertificate {
    /// Canonical form: vertex count, color class sizes, then the relabeled
    /// adjacency rows. Equal iff the graphs are color-preserving isomorphic.
    pub fn form(&self) -> &[u64] {
        &self.form
    }

    pub fn form_bytes(&self) -> Vec<u8> {
        self.form.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    /// Number of orbits.
    pub fn orbit_count(&self) -> usize {
        self.orbits.iter().enumerate().filter(|&(v, &r)| v == r).count()
    }
}

impl PartialOrd for CanonCertificate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonCertificate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.form.cmp(&other.form)
    }
}

impl std::hash::Hash for CanonCertificate {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.form.hash(state);
    }
}

/// Canonical labeling with the color classes as initial partition.
pub fn canon(g: &Graph) -> CanonCertificate {
    canon_with_invariant(g, None)
}

/// Like [`canon`], but splits each color class further by a vertex
/// invariant (cells ordered by increasing value). The invariant must be
/// preserved by every color-preserving isomorphism.
pub fn canon_with_invariant(g: &Graph, invariant: Option<&[u64]>) -> CanonCertificate {
    let out = search(g, invariant, true);
    let sizes = g.color_sizes();
    let mut form = Vec::with_capacity(2 + sizes.len() + out.form.len());
    form.push(g.n as u64);
    form.push(sizes.len() as u64);
    form.extend(sizes.iter().map(|&s| s as u64));
    form.extend_from_slice(&out.form);
    CanonCertificate {
        form,
        labeling: out.labeling,
        aut_order: out.aut_order.unwrap(),
        orbits: out.orbits,
    }
}

pub(crate) struct SearchOutput {
    /// Relabeled adjacency rows (MSB-first bit order).
    pub form: Vec<u64>,
    pub labeling: Vec<usize>,
    pub aut_order: Option<BigUint>,
    pub orbits: Vec<usize>,
}

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    /// Start position of the cell containing each position.
    start: Vec<u32>,
    /// End (exclusive) of the cell beginning at each start position.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }
}

struct Automorphism {
    perm: Vec<u32>,
    /// Bitset of fixed points.
    fixed: Vec<u64>,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }
    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // smaller root wins so representatives are orbit minima
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi as usize] = lo;
        }
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    counts: Vec<u32>,
    mask: Vec<u64>,
    queue: VecDeque<u32>,
    in_queue: Vec<bool>,
    first_lab: Option<Vec<u32>>,
    first_form: Vec<u64>,
    first_path: Vec<u32>,
    best_lab: Vec<u32>,
    best_form: Vec<u64>,
    scratch_form: Vec<u64>,
    gens: Vec<Automorphism>,
    frag: Vec<(u32, u32)>,
    starts: Vec<(usize, usize)>,
    pool: Vec<Partition>,
}

pub(crate) fn search(g: &Graph, invariant: Option<&[u64]>, want_aut: bool) -> SearchOutput {
    let n = g.n;
    if n == 0 {
        return SearchOutput {
            form: Vec::new(),
            labeling: Vec::new(),
            aut_order: Some(BigUint::from(1u32)),
            orbits: Vec::new(),
        };
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    let key = |v: u32| {
        (
            g.colors[v as usize],
            invariant.map_or(0, |inv| inv[v as usize]),
        )
    };
    order.sort_by_key(|&v| (key(v), v));
    let mut part = Partition {
        lab: order,
        start: vec![0; n],
        end: vec![0; n],
        cells: 0,
    };
    let mut s = 0;
    while s < n {
        let k = key(part.lab[s]);
        let mut e = s + 1;
        while e < n && key(part.lab[e]) == k {
            e += 1;
        }
        for p in s..e {
            part.start[p] = s as u32;
        }
        part.end[s] = e as u32;
        part.cells += 1;
        s = e;
    }
    let mut sr = Searcher {
        g,
        counts: vec![0; n],
        mask: vec![0; g.words],
        queue: VecDeque::new(),
        in_queue: vec![false; n],
        first_lab: None,
        first_form: Vec::new(),
        first_path: Vec::new(),
        best_lab: Vec::new(),
        best_form: Vec::new(),
        scratch_form: vec![0; n * g.words],
        gens: Vec::new(),
        frag: Vec::new(),
        starts: Vec::new(),
        pool: Vec::new(),
    };
    let mut p = 0;
    while p < n {
        sr.enqueue(p as u32);
        p = part.end[p] as usize;
    }
    sr.refine(&mut part);
    let mut path = Vec::new();
    sr.node(&part, 0, &mut path);

    let mut uf = UnionFind::new(n);
    for a in &sr.gens {
        for (v, &img) in a.perm.iter().enumerate() {
            uf.union(v as u32, img);
        }
    }
    let orbits = (0..n as u32).map(|v| uf.find(v) as usize).collect();
    let aut_order = want_aut.then(|| sr.aut_order());
    SearchOutput {
        form: sr.best_form,
        labeling: sr.best_lab.iter().map(|&v| v as usize).collect(),
        aut_order,
        orbits,
    }
}

impl Searcher<'_> {
    fn enqueue(&mut self, s: u32) {
        if !self.in_queue[s as usize] {
            self.in_queue[s as usize] = true;
            self.queue.push_back(s);
        }
    }

    fn refine(&mut self, part: &mut Partition) {
        let n = self.g.n;
        let w = self.g.words;
        let mut frag = std::mem::take(&mut self.frag);
        while let Some(ws) = self.queue.pop_front() {
            self.in_queue[ws as usize] = false;
            if part.is_discrete() {
                continue;
            }
            self.mask.iter_mut().for_each(|x| *x = 0);
            for p in ws..part.end[ws as usize] {
                let v = part.lab[p as usize] as usize;
                self.mask[v / 64] |= 1 << (v % 64);
            }
            let mut s = 0usize;
            while s < n {
                let e = part.end[s] as usize;
                if e - s > 1 {
                    let mut same = true;
                    for p in s..e {
                        let v = part.lab[p] as usize;
                        let c: u32 = if w == 1 {
                            (self.g.adj[v] & self.mask[0]).count_ones()
                        } else {
                            self.g.adj[v * w..(v + 1) * w]
                                .iter()
                                .zip(&self.mask)
                                .map(|(a, b)| (a & b).count_ones())
                                .sum()
                        };
                        self.counts[p] = c;
                        if c != self.counts[s] {
                            same = false;
                        }
                    }
                    if !same {
                        self.split(part, s, e, &mut frag);
                    }
                }
                s = e;
            }
        }
        self.frag = frag;
    }

    /// Splits cell `s..e` by `counts`, fragments in ascending count order.
    fn split(&mut self, part: &mut Partition, s: usize, e: usize, frag: &mut Vec<(u32, u32)>) {
        frag.clear();
        frag.extend((s..e).map(|p| (self.counts[p], part.lab[p])));
        frag.sort_unstable();
        for (i, &(_, v)) in frag.iter().enumerate() {
            part.lab[s + i] = v;
        }
        let was_queued = self.in_queue[s];
        let mut starts = std::mem::take(&mut self.starts);
        starts.clear();
        let mut i = 0;
        while i < frag.len() {
            let mut j = i + 1;
            while j < frag.len() && frag[j].0 == frag[i].0 {
                j += 1;
            }
            let fs = s + i;
            let fe = s + j;
            for p in fs..fe {
                part.start[p] = fs as u32;
            }
            part.end[fs] = fe as u32;
            starts.push((fs, fe - fs));
            i = j;
        }
        part.cells += starts.len() - 1;
        if was_queued {
            for &(fs, _) in &starts[1..] {
                self.enqueue(fs as u32);
            }
        } else {
            let largest = starts
                .iter()
                .enumerate()
                .fold(0, |best, (k, f)| if f.1 > starts[best].1 { k } else { best });
            for (k, &(fs, _)) in starts.iter().enumerate() {
                if k != largest {
                    self.enqueue(fs as u32);
                }
            }
        }
        self.starts = starts;
    }

    fn individualize(&mut self, part: &mut Partition, v: u32) {
        let pos = part.lab.iter().position(|&x| x == v).unwrap();
        let s = part.start[pos] as usize;
        let e = part.end[s] as usize;
        part.lab.swap(s, pos);
        part.end[s] = s as u32 + 1;
        for p in s + 1..e {
            part.start[p] = s as u32 + 1;
        }
        part.end[s + 1] = e as u32;
        part.cells += 1;
        self.enqueue(s as u32);
        self.refine(part);
    }

    fn target_cell(part: &Partition) -> (usize, usize) {
        let n = part.lab.len();
        let mut best = (0, usize::MAX);
        let mut s = 0;
        while s < n {
            let e = part.end[s] as usize;
            if e - s > 1 && e - s < best.1 {
                best = (s, e - s);
            }
            s = e;
        }
        (best.0, best.0 + best.1)
    }

    fn compute_form(&mut self, lab: &[u32]) {
        let n = self.g.n;
        let w = self.g.words;
        let mut inv = vec![0u32; n];
        for (p, &v) in lab.iter().enumerate() {
            inv[v as usize] = p as u32;
        }
        let form = &mut self.scratch_form;
        form.iter_mut().for_each(|x| *x = 0);
        for (p, &v) in lab.iter().enumerate() {
            for u in self.g.neighbors(v as usize) {
                let q = inv[u] as usize;
                form[p * w + q / 64] |= 1 << (63 - q % 64);
            }
        }
    }

    fn record_automorphism(&mut self, from: &[u32], to: &[u32]) {
        let n = self.g.n;
        let mut perm = vec![0u32; n];
        for p in 0..n {
            perm[from[p] as usize] = to[p];
        }
        let mut fixed = vec![0u64; self.g.words];
        for (v, &img) in perm.iter().enumerate() {
            if img as usize == v {
                fixed[v / 64] |= 1 << (v % 64);
            }
        }
        if perm.iter().enumerate().all(|(v, &i)| v == i as usize) {
            return;
        }
        self.gens.push(Automorphism { perm, fixed });
    }

    /// Union-find over the generators that fix every vertex of `prefix`.
    fn stabilizer_orbits(&self, prefix: &[u32]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.n);
        for a in &self.gens {
            let fixes = prefix
                .iter()
                .all(|&v| a.fixed[v as usize / 64] >> (v % 64) & 1 == 1);
            if fixes {
                for (v, &img) in a.perm.iter().enumerate() {
                    uf.union(v as u32, img);
                }
            }
        }
        uf
    }

    /// Returns `Some(level)` to abandon the search up to that level.
    fn node(&mut self, part: &Partition, level: usize, path: &mut Vec<u32>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(&part.lab, path);
        }
        let (s, e) = Self::target_cell(part);
        let mut children: Vec<u32> = part.lab[s..e].to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut gens_seen = usize::MAX;
        let mut uf = UnionFind::new(0);
        for &v in &children {
            if !explored.is_empty() {
                if gens_seen != self.gens.len() {
                    uf = self.stabilizer_orbits(path);
                    gens_seen = self.gens.len();
                }
                let rv = uf.find(v);
                if explored.iter().any(|&x| uf.find(x) == rv) {
                    continue;
                }
            }
            let mut child = self.pool.pop().unwrap_or_else(|| part.clone());
            child.clone_from(part);
            self.individualize(&mut child, v);
            path.push(v);
            if self.first_lab.is_none() {
                self.first_path.push(v);
            }
            let r = self.node(&child, level + 1, path);
            self.pool.push(child);
            path.pop();
            explored.push(v);
            if let Some(j) = r {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: &[u32], path: &[u32]) -> Option<usize> {
        self.compute_form(lab);
        let Some(first_lab) = &self.first_lab else {
            self.first_lab = Some(lab.to_vec());
            self.first_form = self.scratch_form.clone();
            self.best_lab = lab.to_vec();
            self.best_form = self.scratch_form.clone();
            return None;
        };
        if self.scratch_form == self.first_form {
            let first_lab = first_lab.clone();
            self.record_automorphism(&first_lab, lab);
            let common = path
                .iter()
                .zip(&self.first_path)
                .take_while(|(a, b)| a == b)
                .count();
            return Some(common);
        }
        match self.scratch_form.cmp(&self.best_form) {
            std::cmp::Ordering::Equal => {
                let best = self.best_lab.clone();
                self.record_automorphism(&best, lab);
            }
            std::cmp::Ordering::Less => {
                self.best_lab = lab.to_vec();
                self.best_form.clone_from(&self.scratch_form);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Product over first-path levels of the orbit length of the chosen
    /// vertex under the pointwise stabilizer of the preceding choices.
    fn aut_order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for k in 0..self.first_path.len() {
            let mut uf = self.stabilizer_orbits(&self.first_path[..k]);
            let r = uf.find(self.first_path[k]);
            let size = (0..self.g.n as u32).filter(|&v| uf.find(v) == r).count();
            order *= size as u64;
        }
        order
    }
}
