//! Near-triangulations stored as combinatorial embeddings.
//!
//! A [`NearTriangulation`] is a rotation system (clockwise neighbor order
//! around every vertex) together with the clockwise outer cycle. Faces are
//! traced with the rule `next(u -> v) = (v -> succ_v(u))`, under which the
//! outer face is traced in the order of `outer` and every inner face is
//! traced counterclockwise.
//!
//! Every vertex carries an immutable external [`Label`]. Surgery never
//! mutates in place: it returns a fresh, re-validated value whose vertex ids
//! are compacted, while labels of surviving vertices are preserved. Callers
//! map sets between a graph and a derived graph through labels.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// External vertex identity that survives surgery.
pub type Label = u64;

/// Unvalidated embedding data, as read from disk or built by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEmbedding {
    pub n: usize,
    pub rotation: Vec<Vec<usize>>,
    pub outer: Vec<usize>,
    pub labels: Option<Vec<Label>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum ValidationError {
    #[error("malformed embedding: {0}")]
    Malformed(String),
    #[error("multi-edge between {0} and {1}")]
    MultiEdge(usize, usize),
    #[error("embedding is not planar (V - E + F = {0})")]
    NotPlanarEmbedding(i64),
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("bad outer cycle: {0}")]
    BadOuterCycle(String),
    #[error("inner face {face} has {len} sides")]
    NonTriangularInnerFace { face: usize, len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum SurgeryError {
    #[error("edge {0}-{1} is not present")]
    EdgeNotPresent(usize, usize),
    #[error("vertex {0} is not on the outer cycle")]
    NotBoundaryVertex(usize),
    #[error("edge {0}-{1} is not a boundary edge")]
    NotBoundaryEdge(usize, usize),
    #[error("edge {0}-{1} is not a diagonal")]
    NotDiagonal(usize, usize),
    #[error("boundary edge {0}-{1} is not in a reducible configuration")]
    NotReducibleEdge(usize, usize),
    #[error("edge {0}-{1} is not contractible")]
    NotContractible(usize, usize),
    #[error("result is not a near-triangulation: {0:?}")]
    ResultNotNearTriangulation(Vec<ValidationError>),
}

/// Position of an edge relative to the outer cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Boundary,
    Diagonal,
    Interior,
}

/// A validated near-triangulation. Immutable once built.
#[derive(Clone, Debug)]
pub struct NearTriangulation {
    rotation: Vec<Vec<usize>>,
    outer: Vec<usize>,
    labels: Vec<Label>,
    outer_pos: Vec<Option<usize>>,
    label_index: HashMap<Label, usize>,
}

impl PartialEq for NearTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation && self.outer == other.outer && self.labels == other.labels
    }
}

impl Eq for NearTriangulation {}

const NONE: usize = usize::MAX;

impl NearTriangulation {
    /// Validates raw embedding data, reporting every violated invariant.
    pub fn validate(raw: RawEmbedding) -> Result<Self, Vec<ValidationError>> {
        let RawEmbedding { n, rotation, outer, labels } = raw;
        let mut errors = Vec::new();
        let malformed = |s: String| vec![ValidationError::Malformed(s)];

        if n < 3 {
            return Err(malformed(format!("vertex count {n} is below 3")));
        }
        if rotation.len() != n {
            return Err(malformed(format!("{} rotations for {n} vertices", rotation.len())));
        }
        let labels = labels.unwrap_or_else(|| (0..n as Label).collect());
        if labels.len() != n {
            return Err(malformed(format!("{} labels for {n} vertices", labels.len())));
        }
        let mut label_index = HashMap::with_capacity(n);
        for (v, &l) in labels.iter().enumerate() {
            if label_index.insert(l, v).is_some() {
                return Err(malformed(format!("label {l} used twice")));
            }
        }

        for (v, rot) in rotation.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                if u >= n {
                    return Err(malformed(format!("vertex {v} has out-of-range neighbor {u}")));
                }
                if u == v {
                    return Err(malformed(format!("self-loop at {v}")));
                }
                if rot[..i].contains(&u) {
                    errors.push(ValidationError::MultiEdge(v.min(u), v.max(u)));
                }
            }
        }
        if !errors.is_empty() {
            errors.sort_by_key(|e| format!("{e:?}"));
            errors.dedup();
            return Err(errors);
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &u in rot {
                if !rotation[u].contains(&v) {
                    return Err(malformed(format!("edge {v}->{u} has no reverse")));
                }
            }
        }

        if !is_connected(&rotation) {
            return Err(vec![ValidationError::NotBiconnected]);
        }

        if outer.len() < 3 {
            return Err(vec![ValidationError::BadOuterCycle(format!("length {} is below 3", outer.len()))]);
        }
        let mut outer_pos = vec![None; n];
        for (i, &v) in outer.iter().enumerate() {
            if v >= n {
                return Err(vec![ValidationError::BadOuterCycle(format!("vertex {v} out of range"))]);
            }
            if outer_pos[v].is_some() {
                return Err(vec![ValidationError::BadOuterCycle(format!("vertex {v} repeated"))]);
            }
            outer_pos[v] = Some(i);
        }
        for i in 0..outer.len() {
            let (a, b) = (outer[i], outer[(i + 1) % outer.len()]);
            if !rotation[a].contains(&b) {
                return Err(vec![ValidationError::BadOuterCycle(format!(
                    "consecutive vertices {a},{b} are not adjacent"
                ))]);
            }
        }

        let faces = trace_faces(&rotation);
        let edges: usize = rotation.iter().map(Vec::len).sum::<usize>() / 2;
        let euler = n as i64 - edges as i64 + faces.len() as i64;
        if euler != 2 {
            errors.push(ValidationError::NotPlanarEmbedding(euler));
        }
        let outer_face = faces.iter().position(|f| {
            f.len() == outer.len() && {
                let start = f.iter().position(|&x| x == outer[0]);
                start.is_some_and(|s| (0..f.len()).all(|i| f[(s + i) % f.len()] == outer[i]))
            }
        });
        match outer_face {
            None => errors.push(ValidationError::BadOuterCycle("outer cycle does not bound a face".into())),
            Some(of) => {
                for (i, f) in faces.iter().enumerate() {
                    if i != of && f.len() != 3 {
                        errors.push(ValidationError::NonTriangularInnerFace { face: i, len: f.len() });
                    }
                }
            }
        }
        if has_articulation_point(&rotation) {
            errors.push(ValidationError::NotBiconnected);
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        Ok(Self { rotation, outer, labels, outer_pos, label_index })
    }

    /// Triangulated convex polygon on `0..n` (clockwise) with the given diagonals.
    pub fn convex_mop(n: usize, diagonals: &[(usize, usize)]) -> Result<Self, Vec<ValidationError>> {
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i].push(j);
            adj[j].push(i);
        }
        for &(a, b) in diagonals {
            if a >= n || b >= n {
                return Err(vec![ValidationError::Malformed(format!("diagonal {a}-{b} out of range"))]);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // Around a convex-polygon corner, clockwise order is increasing
        // cyclic offset from the corner.
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_by_key(|&u| (u + n - v) % n);
        }
        Self::validate(RawEmbedding { n, rotation: adj, outer: (0..n).collect(), labels: None })
    }

    pub fn to_raw(&self) -> RawEmbedding {
        RawEmbedding {
            n: self.n(),
            rotation: self.rotation.clone(),
            outer: self.outer.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    /// Length of the outer cycle.
    pub fn h(&self) -> usize {
        self.outer.len()
    }

    /// Number of interior vertices.
    pub fn m(&self) -> usize {
        self.n() - self.h()
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn id_of_label(&self, l: Label) -> Option<usize> {
        self.label_index.get(&l).copied()
    }

    /// A label not used by any vertex of this graph.
    pub fn fresh_label(&self) -> Label {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_outer(&self, v: usize) -> bool {
        self.outer_pos[v].is_some()
    }

    pub fn outer_pos(&self, v: usize) -> Option<usize> {
        self.outer_pos[v]
    }

    pub fn is_mop(&self) -> bool {
        self.h() == self.n()
    }

    pub fn is_triangulation(&self) -> bool {
        self.h() == 3
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.rotation[u].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as `(min, max)` pairs in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n())
            .flat_map(|u| self.rotation[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Clockwise successor of `u` in the rotation around `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("succ: not a neighbor");
        rot[(i + 1) % rot.len()]
    }

    /// Clockwise predecessor of `u` in the rotation around `v`.
    pub fn pred(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("pred: not a neighbor");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    pub fn outer_next(&self, v: usize) -> Option<usize> {
        self.outer_pos[v].map(|i| self.outer[(i + 1) % self.h()])
    }

    pub fn outer_prev(&self, v: usize) -> Option<usize> {
        self.outer_pos[v].map(|i| self.outer[(i + self.h() - 1) % self.h()])
    }

    pub fn is_boundary_edge(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) && (self.outer_next(u) == Some(v) || self.outer_next(v) == Some(u))
    }

    pub fn classify_edge(&self, u: usize, v: usize) -> Result<EdgeClass, SurgeryError> {
        if !self.has_edge(u, v) {
            return Err(SurgeryError::EdgeNotPresent(u, v));
        }
        Ok(if self.is_boundary_edge(u, v) {
            EdgeClass::Boundary
        } else if self.is_outer(u) && self.is_outer(v) {
            EdgeClass::Diagonal
        } else {
            EdgeClass::Interior
        })
    }

    /// Orients a boundary edge so that `a -> b` follows the outer cycle.
    pub fn orient_boundary_edge(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        if !self.has_edge(u, v) {
            None
        } else if self.outer_next(u) == Some(v) {
            Some((u, v))
        } else if self.outer_next(v) == Some(u) {
            Some((v, u))
        } else {
            None
        }
    }

    /// Third vertex of the inner triangle on boundary edge `a -> b`.
    pub fn inner_apex(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = self.orient_boundary_edge(u, v)?;
        Some(self.succ(a, b))
    }

    /// Faces traced from the rotation system, in discovery order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        trace_faces(&self.rotation)
    }

    /// Breadth-first distance; `usize::MAX` if unreachable (never for valid graphs).
    pub fn distance(&self, x: usize, y: usize) -> usize {
        if x == y {
            return 0;
        }
        let mut dist = vec![NONE; self.n()];
        dist[x] = 0;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            for &w in &self.rotation[u] {
                if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    if w == y {
                        return dist[w];
                    }
                    q.push_back(w);
                }
            }
        }
        NONE
    }

    /// `distance(x, y) <= 2`, without a full search.
    pub fn within_two(&self, x: usize, y: usize) -> bool {
        x == y || self.has_edge(x, y) || self.rotation[x].iter().any(|&z| self.rotation[y].contains(&z))
    }

    // ------------------------------------------------------------------
    // Surgery
    // ------------------------------------------------------------------

    /// Removes a boundary vertex; its inner neighbors join the outer cycle.
    pub fn remove_vertex(&self, u: usize) -> Result<Self, SurgeryError> {
        let i = self.outer_pos[u].ok_or(SurgeryError::NotBoundaryVertex(u))?;
        let h = self.h();
        let next = self.outer[(i + 1) % h];
        let rot = &self.rotation[u];
        let start = rot.iter().position(|&x| x == next).expect("outer successor is a neighbor");
        // rot(u) read from the outer successor runs clockwise to the outer
        // predecessor; the replacement path is that sequence reversed.
        let inner: Vec<usize> = (1..rot.len() - 1).map(|k| rot[(start + k) % rot.len()]).collect();
        let mut outer = Vec::with_capacity(h + inner.len());
        for k in 0..h {
            let v = self.outer[(i + k) % h];
            if v == u {
                continue;
            }
            outer.push(v);
            if k == h - 1 {
                outer.extend(inner.iter().rev());
            }
        }
        let mut keep = vec![true; self.n()];
        keep[u] = false;
        let rotation: Vec<Vec<usize>> =
            self.rotation.iter().map(|r| r.iter().copied().filter(|&x| x != u).collect()).collect();
        rebuild(&keep, rotation, outer, self.labels.clone()).map_err(SurgeryError::ResultNotNearTriangulation)
    }

    /// Removes a boundary edge whose inner apex is interior.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Self, SurgeryError> {
        if !self.has_edge(u, v) {
            return Err(SurgeryError::EdgeNotPresent(u, v));
        }
        let (a, b) = self.orient_boundary_edge(u, v).ok_or(SurgeryError::NotReducibleEdge(u, v))?;
        let w = self.succ(a, b);
        if self.is_outer(w) {
            return Err(SurgeryError::NotReducibleEdge(u, v));
        }
        let mut rotation = self.rotation.clone();
        rotation[a].retain(|&x| x != b);
        rotation[b].retain(|&x| x != a);
        let pos = self.outer_pos[a].unwrap();
        let mut outer = self.outer.clone();
        outer.insert(pos + 1, w);
        let keep = vec![true; self.n()];
        rebuild(&keep, rotation, outer, self.labels.clone()).map_err(SurgeryError::ResultNotNearTriangulation)
    }

    /// Contracts `u v`, the merged vertex getting a fresh label.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Self, SurgeryError> {
        self.contract_edge_labeled(u, v, self.fresh_label()).map(|(g, _)| g)
    }

    /// Contracts `u v` into a vertex carrying `label`; returns the result and
    /// the id of the merged vertex in it.
    pub fn contract_edge_labeled(&self, u: usize, v: usize, label: Label) -> Result<(Self, usize), SurgeryError> {
        if !self.has_edge(u, v) {
            return Err(SurgeryError::EdgeNotPresent(u, v));
        }
        let fail = || SurgeryError::NotContractible(u, v);
        if self.label_index.get(&label).is_some_and(|&x| x != u && x != v) {
            return Err(fail());
        }
        let around = |x: usize, skip: usize| -> Vec<usize> {
            let rot = &self.rotation[x];
            let s = rot.iter().position(|&y| y == skip).unwrap();
            (1..rot.len()).map(|k| rot[(s + k) % rot.len()]).collect()
        };
        let mut merged = around(u, v);
        merged.extend(around(v, u));
        let mut rot_w: Vec<usize> = Vec::with_capacity(merged.len());
        for &z in &merged {
            if rot_w.last() != Some(&z) {
                rot_w.push(z);
            }
        }
        while rot_w.len() > 1 && rot_w.first() == rot_w.last() {
            rot_w.pop();
        }
        let mut seen = rot_w.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(fail());
        }

        let mut rotation = self.rotation.clone();
        rotation[u] = rot_w;
        rotation[v].clear();
        for (z, r) in rotation.iter_mut().enumerate() {
            if z == u || z == v {
                continue;
            }
            let pu = r.iter().position(|&x| x == u);
            let pv = r.iter().position(|&x| x == v);
            match (pu, pv) {
                (None, None) | (Some(_), None) => {}
                (None, Some(j)) => r[j] = u,
                (Some(i), Some(j)) => {
                    let d = r.len();
                    if (i + 1) % d != j && (j + 1) % d != i {
                        return Err(fail());
                    }
                    r.remove(j);
                }
            }
        }

        let (pu, pv) = (self.outer_pos[u], self.outer_pos[v]);
        let mut outer = self.outer.clone();
        match (pu, pv) {
            (Some(_), Some(_)) => {
                if !self.is_boundary_edge(u, v) {
                    return Err(fail());
                }
                outer.retain(|&x| x != v);
            }
            (None, Some(j)) => outer[j] = u,
            _ => {}
        }
        if outer.len() < 3 {
            return Err(fail());
        }
        let mut labels = self.labels.clone();
        labels[u] = label;
        let mut keep = vec![true; self.n()];
        keep[v] = false;
        let g = rebuild(&keep, rotation, outer, labels).map_err(|_| fail())?;
        let w = g.id_of_label(label).unwrap();
        Ok((g, w))
    }

    /// True iff contracting the edge yields a near-triangulation.
    pub fn is_contractible(&self, u: usize, v: usize) -> Result<bool, SurgeryError> {
        if !self.has_edge(u, v) {
            return Err(SurgeryError::EdgeNotPresent(u, v));
        }
        Ok(self.contract_edge(u, v).is_ok())
    }

    /// Attaches a new degree-2 vertex to boundary edge `u v`.
    pub fn add_ear(&self, u: usize, v: usize, label: Label) -> Result<(Self, usize), SurgeryError> {
        let (a, b) = self.orient_boundary_edge(u, v).ok_or(SurgeryError::NotBoundaryEdge(u, v))?;
        if self.label_index.contains_key(&label) {
            return Err(SurgeryError::ResultNotNearTriangulation(vec![ValidationError::Malformed(format!(
                "label {label} already used"
            ))]));
        }
        let x = self.n();
        let mut rotation = self.rotation.clone();
        let ia = rotation[a].iter().position(|&z| z == b).unwrap();
        rotation[a].insert(ia, x);
        let ib = rotation[b].iter().position(|&z| z == a).unwrap();
        rotation[b].insert(ib + 1, x);
        rotation.push(vec![a, b]);
        let mut outer = self.outer.clone();
        outer.insert(self.outer_pos[a].unwrap() + 1, x);
        let mut labels = self.labels.clone();
        labels.push(label);
        let g = Self::validate(RawEmbedding { n: x + 1, rotation, outer, labels: Some(labels) })
            .map_err(SurgeryError::ResultNotNearTriangulation)?;
        Ok((g, x))
    }

    /// The piece cut off by chord `a b` whose outer cycle runs clockwise from
    /// `a` to `b` and closes along the chord.
    pub fn side_of_chord(&self, a: usize, b: usize) -> Result<Self, SurgeryError> {
        if self.classify_edge(a, b)? != EdgeClass::Diagonal {
            return Err(SurgeryError::NotDiagonal(a, b));
        }
        let h = self.h();
        let (pa, pb) = (self.outer_pos[a].unwrap(), self.outer_pos[b].unwrap());
        let arc: Vec<usize> = (0..=((pb + h - pa) % h)).map(|k| self.outer[(pa + k) % h]).collect();
        let mut keep = vec![false; self.n()];
        keep[a] = true;
        keep[b] = true;
        let mut q: VecDeque<usize> = arc[1..arc.len() - 1].iter().copied().collect();
        for &x in &q {
            keep[x] = true;
        }
        while let Some(x) = q.pop_front() {
            for &y in &self.rotation[x] {
                if !keep[y] {
                    keep[y] = true;
                    q.push_back(y);
                }
            }
        }
        let rotation: Vec<Vec<usize>> =
            self.rotation.iter().map(|r| r.iter().copied().filter(|&y| keep[y]).collect()).collect();
        rebuild(&keep, rotation, arc, self.labels.clone()).map_err(SurgeryError::ResultNotNearTriangulation)
    }

    /// Vertices of the side of chord `a b` running clockwise from `a` to `b`.
    pub fn chord_side_vertices(&self, a: usize, b: usize) -> Result<Vec<usize>, SurgeryError> {
        let side = self.side_of_chord(a, b)?;
        Ok(side.labels.iter().map(|&l| self.label_index[&l]).collect())
    }

    /// Bounded faces as `[a, b, c]`, traced `a -> b -> c`.
    pub fn inner_faces(&self) -> Vec<[usize; 3]> {
        let (o0, o1) = (self.outer[0], self.outer[1]);
        self.faces()
            .into_iter()
            .filter(|f| !(0..f.len()).any(|i| f[i] == o0 && f[(i + 1) % f.len()] == o1))
            .map(|f| [f[0], f[1], f[2]])
            .collect()
    }

    /// Places a new interior vertex inside the bounded face `a -> b -> c`.
    pub fn insert_in_face(&self, face: [usize; 3], label: Label) -> Result<(Self, usize), SurgeryError> {
        let [a, b, c] = face;
        if !(self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(c, a) && self.succ(b, a) == c) {
            return Err(SurgeryError::ResultNotNearTriangulation(vec![ValidationError::Malformed(format!(
                "{a} {b} {c} is not a bounded face"
            ))]));
        }
        let x = self.n();
        let mut rotation = self.rotation.clone();
        for (center, after) in [(b, a), (c, b), (a, c)] {
            let i = rotation[center].iter().position(|&z| z == after).unwrap();
            rotation[center].insert(i + 1, x);
        }
        rotation.push(vec![a, c, b]);
        let mut labels = self.labels.clone();
        labels.push(label);
        let g = Self::validate(RawEmbedding { n: x + 1, rotation, outer: self.outer.clone(), labels: Some(labels) })
            .map_err(SurgeryError::ResultNotNearTriangulation)?;
        Ok((g, x))
    }

    /// Replaces non-boundary edge `a b` by the other diagonal of the
    /// quadrilateral formed by its two triangles.
    pub fn flip(&self, a: usize, b: usize) -> Result<Self, SurgeryError> {
        if !self.has_edge(a, b) {
            return Err(SurgeryError::EdgeNotPresent(a, b));
        }
        if self.is_boundary_edge(a, b) {
            return Err(SurgeryError::NotDiagonal(a, b));
        }
        let c = self.succ(b, a);
        let d = self.succ(a, b);
        if c == d || self.has_edge(c, d) {
            return Err(SurgeryError::ResultNotNearTriangulation(vec![ValidationError::MultiEdge(c.min(d), c.max(d))]));
        }
        let mut rotation = self.rotation.clone();
        rotation[a].retain(|&z| z != b);
        rotation[b].retain(|&z| z != a);
        let i = rotation[c].iter().position(|&z| z == b).unwrap();
        rotation[c].insert(i + 1, d);
        let i = rotation[d].iter().position(|&z| z == a).unwrap();
        rotation[d].insert(i + 1, c);
        Self::validate(RawEmbedding {
            n: self.n(),
            rotation,
            outer: self.outer.clone(),
            labels: Some(self.labels.clone()),
        })
        .map_err(SurgeryError::ResultNotNearTriangulation)
    }

    /// Mirror image: every rotation and the outer cycle reversed.
    pub fn reflect(&self) -> Self {
        let rotation = self.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let outer = self.outer.iter().rev().copied().collect();
        Self::validate(RawEmbedding { n: self.n(), rotation, outer, labels: Some(self.labels.clone()) })
            .expect("reflection of a valid embedding is valid")
    }
}

/// Drops vertices with `keep[v] == false`, renumbering the rest in id order.
fn rebuild(
    keep: &[bool],
    rotation: Vec<Vec<usize>>,
    outer: Vec<usize>,
    labels: Vec<Label>,
) -> Result<NearTriangulation, Vec<ValidationError>> {
    let mut new_id = vec![NONE; keep.len()];
    let mut n = 0;
    for (v, &k) in keep.iter().enumerate() {
        if k {
            new_id[v] = n;
            n += 1;
        }
    }
    let map = |x: usize| -> Result<usize, Vec<ValidationError>> {
        match new_id.get(x) {
            Some(&id) if id != NONE => Ok(id),
            _ => Err(vec![ValidationError::Malformed(format!("dangling reference to {x}"))]),
        }
    };
    let mut rot = Vec::with_capacity(n);
    let mut lab = Vec::with_capacity(n);
    for (v, r) in rotation.into_iter().enumerate() {
        if keep[v] {
            rot.push(r.into_iter().map(map).collect::<Result<Vec<_>, _>>()?);
            lab.push(labels[v]);
        }
    }
    let outer = outer.into_iter().map(map).collect::<Result<Vec<_>, _>>()?;
    NearTriangulation::validate(RawEmbedding { n, rotation: rot, outer, labels: Some(lab) })
}

fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rotation.len();
    // rev[v][i] = index of v in rotation[rotation[v][i]]
    let rev: Vec<Vec<usize>> = (0..n)
        .map(|v| rotation[v].iter().map(|&u| rotation[u].iter().position(|&x| x == v).unwrap()).collect())
        .collect();
    let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..rotation[v].len() {
            if used[v][i] {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut k) = (v, i);
            while !used[a][k] {
                used[a][k] = true;
                face.push(a);
                let b = rotation[a][k];
                let j = rev[a][k];
                a = b;
                k = (j + 1) % rotation[b].len();
            }
            faces.push(face);
        }
    }
    faces
}

fn is_connected(rotation: &[Vec<usize>]) -> bool {
    let n = rotation.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &rotation[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

fn has_articulation_point(rotation: &[Vec<usize>]) -> bool {
    let n = rotation.len();
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut time = 0;
    // iterative DFS: (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, NONE, 0)];
    disc[0] = 0;
    low[0] = 0;
    let mut root_children = 0;
    while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
        if *idx < rotation[u].len() {
            let w = rotation[u][*idx];
            *idx += 1;
            if disc[w] == NONE {
                time += 1;
                disc[w] = time;
                low[w] = time;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != NONE {
                low[parent] = low[parent].min(low[u]);
                if parent != 0 && low[u] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}
