//! Linear tail-biting trellises and their combinators.
//!
//! A linear trellis of length n keeps, per time index i, an implicit vertex
//! space F^{r_i} and an edge subspace E_i <= F^{r_i} x F x F^{r_{i+1}} in
//! coordinates (v, label, w). Vertices are never materialized; per-vertex
//! queries are linear algebra on the edge spaces. `RawTrellis` is the
//! explicit-graph form used for nonlinear trellises and oracle searches.

use crate::error::{Error, Result};
use crate::field::{FVec, Field, Subspace};
use crate::span::Span;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trellis {
    field: Field,
    n: usize,
    vdims: Vec<usize>,
    /// edges[i] lives in F^{vdims[i] + 1 + vdims[(i+1) % n]}.
    edges: Vec<Subspace>,
}

/// Layout of the interleaved cycle space (v_0, a_0, v_1, a_1, ...).
#[derive(Debug, Clone)]
pub struct CycleLayout {
    pub n: usize,
    pub vdims: Vec<usize>,
    vertex_offsets: Vec<usize>,
    pub total: usize,
}

impl CycleLayout {
    pub fn new(vdims: &[usize]) -> CycleLayout {
        let n = vdims.len();
        let mut vertex_offsets = Vec::with_capacity(n);
        let mut off = 0;
        for &r in vdims {
            vertex_offsets.push(off);
            off += r + 1;
        }
        CycleLayout {
            n,
            vdims: vdims.to_vec(),
            vertex_offsets,
            total: off,
        }
    }

    pub fn vertex_cols(&self, i: usize) -> std::ops::Range<usize> {
        let i = i % self.n;
        let off = self.vertex_offsets[i];
        off..off + self.vdims[i]
    }

    pub fn label_col(&self, i: usize) -> usize {
        let i = i % self.n;
        self.vertex_offsets[i] + self.vdims[i]
    }

    pub fn label_cols(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.label_col(i)).collect()
    }

    /// Columns of the edge triple (v_i, a_i, v_{i+1}).
    pub fn edge_cols(&self, i: usize) -> Vec<usize> {
        let mut cols: Vec<usize> = self.vertex_cols(i).collect();
        cols.push(self.label_col(i));
        cols.extend(self.vertex_cols((i + 1) % self.n));
        cols
    }
}

impl Trellis {
    /// Builds a trellis from explicit edge subspaces, validating dimensions.
    pub fn new(field: Field, vdims: Vec<usize>, edges: Vec<Subspace>) -> Result<Trellis> {
        let n = vdims.len();
        if n == 0 || edges.len() != n {
            return Err(Error::LengthMismatch {
                expected: n.max(1),
                got: edges.len(),
            });
        }
        for i in 0..n {
            let want = vdims[i] + 1 + vdims[(i + 1) % n];
            if edges[i].ambient_dim() != want {
                return Err(Error::LengthMismatch {
                    expected: want,
                    got: edges[i].ambient_dim(),
                });
            }
            if edges[i].field() != field {
                return Err(Error::FieldMismatch(
                    field.modulus(),
                    edges[i].field().modulus(),
                ));
            }
        }
        Ok(Trellis {
            field,
            n,
            vdims,
            edges,
        })
    }

    /// The zero trellis of length n: one vertex per index, zero edges only.
    pub fn zero(field: Field, n: usize) -> Trellis {
        let vdims = vec![0; n];
        let edges = (0..n)
            .map(|_| Subspace::zero(field, 1))
            .collect();
        Trellis {
            field,
            n,
            vdims,
            edges,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn vdims(&self) -> &[usize] {
        &self.vdims
    }

    pub fn vdim(&self, i: usize) -> usize {
        self.vdims[i % self.n]
    }

    pub fn edge_space(&self, i: usize) -> &Subspace {
        &self.edges[i % self.n]
    }

    pub fn layout(&self) -> CycleLayout {
        CycleLayout::new(&self.vdims)
    }

    /// Columns (within an edge triple) of the source vertex part.
    fn edge_v_cols(&self, i: usize) -> Vec<usize> {
        (0..self.vdim(i)).collect()
    }

    fn edge_label_col(&self, i: usize) -> usize {
        self.vdim(i)
    }

    fn edge_w_cols(&self, i: usize) -> Vec<usize> {
        let base = self.vdim(i) + 1;
        (base..base + self.vdim(i + 1)).collect()
    }

    /// True when (0, x, 0) lies in E_i for some x != 0, i.e. there are
    /// parallel edges at index i.
    pub fn has_parallel_edges(&self, i: usize) -> bool {
        let mut cols = self.edge_v_cols(i);
        cols.extend(self.edge_w_cols(i));
        !self.edge_space(i).constrained_zero(&cols).is_zero()
    }

    /// Every vertex has an outgoing and an incoming edge.
    pub fn is_trim(&self) -> bool {
        (0..self.n).all(|i| {
            let out = self.edge_space(i).project(&self.edge_v_cols(i));
            let inc = self
                .edge_space((i + self.n - 1) % self.n)
                .project(&self.edge_w_cols((i + self.n - 1) % self.n));
            out.dim() == self.vdim(i) && inc.dim() == self.vdim(i)
        })
    }

    /// The elementary trellis for `alpha` of span `s`.
    ///
    /// Vertex spaces are F on the half-open interval of the span and 0
    /// outside; the edge space at i is spanned by (v_i, alpha_i, v_{i+1})
    /// with v_i the indicator of the interval.
    pub fn elementary(alpha: &FVec, s: Span) -> Result<Trellis> {
        let n = alpha.len();
        let field = alpha.field();
        if s.ambient_len() != n {
            return Err(Error::SpanAmbientMismatch(s.ambient_len(), n));
        }
        if s.is_empty_span() {
            if !alpha.is_zero() {
                return Err(Error::NotASpan { a: 0, l: -1 });
            }
            return Ok(Trellis::zero(field, n));
        }
        // s must be a span of alpha.
        if !alpha.support().iter().all(|&i| s.contains_closed(i)) {
            return Err(Error::NotASpan {
                a: s.start(),
                l: s.len(),
            });
        }
        let in_interval = |i: usize| s.contains_half_open(i);
        let vdims: Vec<usize> = (0..n).map(|i| in_interval(i) as usize).collect();
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let ambient = vdims[i] + 1 + vdims[(i + 1) % n];
            let mut gen = vec![0u8; ambient];
            let mut pos = 0;
            if in_interval(i) {
                gen[pos] = 1;
                pos += 1;
            }
            gen[pos] = alpha.get(i);
            pos += 1;
            if in_interval(i + 1) {
                gen[pos] = 1;
            }
            let rows = vec![FVec::new(field, gen)];
            edges.push(Subspace::from_rows(field, ambient, &rows)?);
        }
        Ok(Trellis {
            field,
            n,
            vdims,
            edges,
        })
    }

    /// Trellis product: vertex spaces multiply, labels add.
    pub fn product(&self, other: &Trellis) -> Result<Trellis> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.n != other.n {
            return Err(Error::TrellisLengthMismatch(self.n, other.n));
        }
        let n = self.n;
        let vdims: Vec<usize> = (0..n).map(|i| self.vdims[i] + other.vdims[i]).collect();
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let (r1, s1) = (self.vdim(i), self.vdim(i + 1));
            let (r2, s2) = (other.vdim(i), other.vdim(i + 1));
            let ambient = r1 + r2 + 1 + s1 + s2;
            let mut rows = Vec::new();
            let embed = |v: &[u8], off_v: usize, a: u8, w: &[u8], off_w: usize| {
                let mut x = vec![0u8; ambient];
                x[off_v..off_v + v.len()].copy_from_slice(v);
                x[r1 + r2] = a;
                let wbase = r1 + r2 + 1;
                x[wbase + off_w..wbase + off_w + w.len()].copy_from_slice(w);
                x
            };
            for row in self.edges[i].basis_rows() {
                let c = row.coords();
                rows.push(FVec::new(
                    self.field,
                    embed(&c[..r1], 0, c[r1], &c[r1 + 1..], 0),
                ));
            }
            for row in other.edges[i].basis_rows() {
                let c = row.coords();
                rows.push(FVec::new(
                    self.field,
                    embed(&c[..r2], r1, c[r2], &c[r2 + 1..], s1),
                ));
            }
            edges.push(Subspace::from_rows(self.field, ambient, &rows)?);
        }
        Ok(Trellis {
            field: self.field,
            n,
            vdims,
            edges,
        })
    }

    /// Product of a list of factors; empty list gives the zero trellis.
    pub fn product_all(field: Field, n: usize, factors: &[Trellis]) -> Result<Trellis> {
        let mut acc = Trellis::zero(field, n);
        for f in factors {
            acc = acc.product(f)?;
        }
        Ok(acc)
    }

    /// Cyclic shift: index i of the result reads index i+j of the input.
    pub fn shift(&self, j: i64) -> Trellis {
        let n = self.n;
        let j = j.rem_euclid(n as i64) as usize;
        let vdims = (0..n).map(|i| self.vdims[(i + j) % n]).collect();
        let edges = (0..n).map(|i| self.edges[(i + j) % n].clone()).collect();
        Trellis {
            field: self.field,
            n,
            vdims,
            edges,
        }
    }

    /// The i-fold cover: length i*n, vertex and edge data repeating with
    /// period n.
    pub fn cover(&self, i: usize) -> Result<Trellis> {
        if i < 1 {
            return Err(Error::InvalidCover(i));
        }
        let mut vdims = Vec::with_capacity(self.n * i);
        let mut edges = Vec::with_capacity(self.n * i);
        for _ in 0..i {
            vdims.extend_from_slice(&self.vdims);
            edges.extend(self.edges.iter().cloned());
        }
        Ok(Trellis {
            field: self.field,
            n: self.n * i,
            vdims,
            edges,
        })
    }

    /// Dual trellis over GF(2): each edge space is replaced by its
    /// annihilator. The result can fail to be trim even when the input is
    /// reduced; apply `trim` before structural queries.
    pub fn dual_f2(&self) -> Result<Trellis> {
        if self.field.modulus() != 2 {
            return Err(Error::UnsupportedField(self.field.modulus()));
        }
        let edges = self.edges.iter().map(|e| e.annihilator()).collect();
        Ok(Trellis {
            field: self.field,
            n: self.n,
            vdims: self.vdims.clone(),
            edges,
        })
    }

    /// Forgets edge labels: each E_i maps through (v, a, w) -> (v, 0, w).
    pub fn unlabel(&self) -> Trellis {
        let n = self.n;
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let rows: Vec<FVec> = self.edges[i]
                .basis_rows()
                .iter()
                .map(|r| {
                    let mut c = r.coords().to_vec();
                    c[self.edge_label_col(i)] = 0;
                    FVec::new(self.field, c)
                })
                .collect();
            edges.push(
                Subspace::from_rows(self.field, self.edges[i].ambient_dim(), &rows)
                    .expect("same ambient"),
            );
        }
        Trellis {
            field: self.field,
            n,
            vdims: self.vdims.clone(),
            edges,
        }
    }

    /// Quotients V_i by <d>, re-expressing the incident edge spaces in
    /// coordinates of the complement spanned by the non-pivot unit vectors.
    pub fn merge(&self, i: usize, d: &FVec) -> Result<Trellis> {
        let i = i % self.n;
        if d.is_zero() {
            return Err(Error::ZeroMergeDirection);
        }
        if d.len() != self.vdims[i] {
            return Err(Error::LengthMismatch {
                expected: self.vdims[i],
                got: d.len(),
            });
        }
        let line = Subspace::from_rows(self.field, d.len(), &[d.clone()])?;
        let pivot = line.raw_basis()[0]
            .iter()
            .position(|&c| c != 0)
            .expect("nonzero");
        let keep: Vec<usize> = (0..d.len()).filter(|&c| c != pivot).collect();
        let f = self.field;
        let drow = &line.raw_basis()[0];
        // v -> v - v[pivot] * d, restricted to the kept coordinates.
        let quotient_map = |v: &[u8]| -> Vec<u8> {
            let c = v[pivot];
            keep.iter()
                .map(|&j| f.sub(v[j], f.mul(c, drow[j])))
                .collect()
        };
        let n = self.n;
        let mut vdims = self.vdims.clone();
        vdims[i] -= 1;
        let mut edges: Vec<Subspace> = Vec::with_capacity(n);
        for e in 0..n {
            let touches_src = e == i;
            let touches_dst = (e + 1) % n == i;
            if !touches_src && !touches_dst {
                edges.push(self.edges[e].clone());
                continue;
            }
            let r = self.vdim(e);
            let rows: Vec<FVec> = self.edges[e]
                .basis_rows()
                .iter()
                .map(|row| {
                    let c = row.coords();
                    let mut out = Vec::new();
                    if touches_src {
                        out.extend(quotient_map(&c[..r]));
                    } else {
                        out.extend_from_slice(&c[..r]);
                    }
                    out.push(c[r]);
                    if touches_dst {
                        out.extend(quotient_map(&c[r + 1..]));
                    } else {
                        out.extend_from_slice(&c[r + 1..]);
                    }
                    FVec::new(f, out)
                })
                .collect();
            let ambient = vdims[e] + 1 + vdims[(e + 1) % n];
            edges.push(Subspace::from_rows(f, ambient, &rows)?);
        }
        Trellis::new(f, vdims, edges)
    }

    /// Restricts every vertex space to reachable-and-coreachable vectors and
    /// re-coordinatizes. Idempotent; the identity on trim trellises.
    pub fn trim(&self) -> Result<Trellis> {
        let n = self.n;
        let f = self.field;
        // Allowed vertex subspaces, iterated to a fixpoint.
        let mut allowed: Vec<Subspace> = (0..n)
            .map(|i| Subspace::full(f, self.vdims[i]))
            .collect();
        loop {
            let mut changed = false;
            for i in 0..n {
                let prev = (i + n - 1) % n;
                // Edges at i restricted to endpoints inside `allowed`.
                let e_out = restrict_edge(&self.edges[i], self.vdim(i), &allowed[i], &allowed[(i + 1) % n], f);
                let out_proj = e_out.project(&(0..self.vdim(i)).collect::<Vec<_>>());
                let e_in = restrict_edge(&self.edges[prev], self.vdim(prev), &allowed[prev], &allowed[i], f);
                let wbase = self.vdim(prev) + 1;
                let in_proj = e_in.project(&(wbase..wbase + self.vdim(i)).collect::<Vec<_>>());
                let new_allowed = out_proj.intersect(&in_proj)?;
                if new_allowed != allowed[i] {
                    allowed[i] = new_allowed;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // Re-coordinatize each vertex space by its allowed basis.
        let vdims: Vec<usize> = allowed.iter().map(|a| a.dim()).collect();
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let e = restrict_edge(&self.edges[i], self.vdim(i), &allowed[i], &allowed[(i + 1) % n], f);
            let r = self.vdim(i);
            let rows: Vec<FVec> = e
                .basis_rows()
                .iter()
                .map(|row| {
                    let c = row.coords();
                    let v = FVec::new(f, c[..r].to_vec());
                    let w = FVec::new(f, c[r + 1..].to_vec());
                    let vc = allowed[i].coordinates_of(&v).expect("restricted");
                    let wc = allowed[(i + 1) % n].coordinates_of(&w).expect("restricted");
                    let mut out = vc.coords().to_vec();
                    out.push(c[r]);
                    out.extend_from_slice(wc.coords());
                    FVec::new(f, out)
                })
                .collect();
            let ambient = vdims[i] + 1 + vdims[(i + 1) % n];
            edges.push(Subspace::from_rows(f, ambient, &rows)?);
        }
        Trellis::new(f, vdims, edges)
    }

    /// The reduced trellis spanned by consistent interleaved generators:
    /// vertex spaces are the coordinate projections of the generated code,
    /// edge spaces the projections onto the edge triples.
    pub fn realize_from_labelcode(
        field: Field,
        vdims: &[usize],
        gens: &[FVec],
    ) -> Result<Trellis> {
        let layout = CycleLayout::new(vdims);
        for g in gens {
            if g.len() != layout.total {
                return Err(Error::InconsistentGenerators);
            }
            if g.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), g.field().modulus()));
            }
        }
        let code = Subspace::from_rows(field, layout.total, gens)?;
        let n = layout.n;
        // New vertex spaces: projections of the code.
        let vertex_spaces: Vec<Subspace> = (0..n)
            .map(|i| code.project(&layout.vertex_cols(i).collect::<Vec<_>>()))
            .collect();
        let new_vdims: Vec<usize> = vertex_spaces.iter().map(|s| s.dim()).collect();
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let triple = code.project(&layout.edge_cols(i));
            let r = vdims[i];
            let rows: Vec<FVec> = triple
                .basis_rows()
                .iter()
                .map(|row| {
                    let c = row.coords();
                    let v = FVec::new(field, c[..r].to_vec());
                    let w = FVec::new(field, c[r + 1..].to_vec());
                    let vc = vertex_spaces[i].coordinates_of(&v).expect("projection");
                    let wc = vertex_spaces[(i + 1) % n]
                        .coordinates_of(&w)
                        .expect("projection");
                    let mut out = vc.coords().to_vec();
                    out.push(c[r]);
                    out.extend_from_slice(wc.coords());
                    FVec::new(field, out)
                })
                .collect();
            let ambient = new_vdims[i] + 1 + new_vdims[(i + 1) % n];
            edges.push(Subspace::from_rows(field, ambient, &rows)?);
        }
        Trellis::new(field, new_vdims, edges)
    }

    /// Explicit-graph form; errors when a vertex set exceeds `max_vertices`.
    pub fn to_raw(&self, max_vertices: usize) -> Result<RawTrellis> {
        let p = self.field.modulus() as usize;
        let mut vcounts = Vec::with_capacity(self.n);
        for &r in &self.vdims {
            let count = p.checked_pow(r as u32).filter(|&c| c <= max_vertices);
            match count {
                Some(c) => vcounts.push(c),
                None => {
                    return Err(Error::BoundExceeded {
                        what: "vertex set size",
                        got: r,
                        bound: max_vertices,
                    })
                }
            }
        }
        // Vertex id = little-endian base-p integer of the coordinate vector.
        let mut edges = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let e = &self.edges[i];
            let elems = if e.dim() > 20 {
                return Err(Error::BoundExceeded {
                    what: "edge set size",
                    got: e.dim(),
                    bound: 1 << 20,
                });
            } else {
                e.enumerate()
            };
            let r = self.vdim(i);
            let mut list = Vec::with_capacity(elems.len());
            for edge in elems {
                let c = edge.coords();
                let v = vec_to_id(&c[..r], p);
                let w = vec_to_id(&c[r + 1..], p);
                list.push((v as u32, c[r], w as u32));
            }
            list.sort_unstable();
            list.dedup();
            edges.push(list);
        }
        Ok(RawTrellis {
            p: self.field.modulus(),
            n: self.n,
            vcounts,
            edges,
        })
    }
}

fn vec_to_id(v: &[u8], p: usize) -> usize {
    let mut id = 0usize;
    for &c in v.iter().rev() {
        id = id * p + c as usize;
    }
    id
}

/// Restricts an edge subspace to source vertices in `src` and destination
/// vertices in `dst`.
fn restrict_edge(
    e: &Subspace,
    r: usize,
    src: &Subspace,
    dst: &Subspace,
    field: Field,
) -> Subspace {
    // Constraints: v annihilated by src's annihilator, w by dst's.
    let ambient = e.ambient_dim();
    let mut constraints: Vec<FVec> = Vec::new();
    for h in src.annihilator().basis_rows() {
        let mut c = vec![0u8; ambient];
        c[..r].copy_from_slice(h.coords());
        constraints.push(FVec::new(field, c));
    }
    for h in dst.annihilator().basis_rows() {
        let mut c = vec![0u8; ambient];
        c[r + 1..].copy_from_slice(h.coords());
        constraints.push(FVec::new(field, c));
    }
    if constraints.is_empty() {
        return e.clone();
    }
    let allowed = Subspace::kernel(field, ambient, &constraints).expect("consistent");
    e.intersect(&allowed).expect("same ambient")
}

/// A path of length m starting at index `start`: vertices v_start..v_{start+m}
/// and the labels in between. Vertex entries are coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub vertices: Vec<FVec>,
    pub labels: Vec<u8>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Checks every consecutive triple against the trellis edge spaces.
    pub fn is_valid(&self, t: &Trellis) -> bool {
        if self.vertices.len() != self.labels.len() + 1 {
            return false;
        }
        for j in 0..self.labels.len() {
            let i = (self.start + j) % t.len();
            let mut c = self.vertices[j].coords().to_vec();
            c.push(self.labels[j]);
            c.extend_from_slice(self.vertices[j + 1].coords());
            let v = FVec::new(t.field(), c);
            if !t.edge_space(i).contains_vec(&v) {
                return false;
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.vertices.iter().all(|v| v.is_zero()) && self.labels.iter().all(|&a| a == 0)
    }
}

/// An explicit (possibly nonlinear) trellis: numbered vertices per index and
/// an edge list per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTrellis {
    pub p: u16,
    pub n: usize,
    pub vcounts: Vec<usize>,
    /// edges[i]: sorted list of (source id, label, target id).
    pub edges: Vec<Vec<(u32, u8, u32)>>,
}

impl RawTrellis {
    /// Every vertex needs an in- and an out-edge.
    pub fn is_trim(&self) -> bool {
        for i in 0..self.n {
            let mut has_out = vec![false; self.vcounts[i]];
            for &(v, _, _) in &self.edges[i] {
                has_out[v as usize] = true;
            }
            let prev = (i + self.n - 1) % self.n;
            let mut has_in = vec![false; self.vcounts[i]];
            for &(_, _, w) in &self.edges[prev] {
                has_in[w as usize] = true;
            }
            if !has_out.iter().all(|&b| b) || !has_in.iter().all(|&b| b) {
                return false;
            }
        }
        true
    }

    /// Merges two vertices at index i into one, collapsing duplicate
    /// parallel edges with equal labels. The result is generally nonlinear.
    pub fn merge_pair(&self, i: usize, a: u32, b: u32) -> RawTrellis {
        let i = i % self.n;
        let (a, b) = (a.min(b), a.max(b));
        let remap = |v: u32| -> u32 {
            if v == b {
                a
            } else if v > b {
                v - 1
            } else {
                v
            }
        };
        let mut vcounts = self.vcounts.clone();
        vcounts[i] -= 1;
        let mut edges = self.edges.clone();
        let prev = (i + self.n - 1) % self.n;
        if self.n == 1 {
            let list: &mut Vec<(u32, u8, u32)> = &mut edges[0];
            for e in list.iter_mut() {
                e.0 = remap(e.0);
                e.2 = remap(e.2);
            }
        } else {
            for e in edges[i].iter_mut() {
                e.0 = remap(e.0);
            }
            for e in edges[prev].iter_mut() {
                e.2 = remap(e.2);
            }
        }
        for list in edges.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        RawTrellis {
            p: self.p,
            n: self.n,
            vcounts,
            edges,
        }
    }

    /// All closed length-n label sequences, as a set. `cap` bounds the
    /// number of partial paths explored.
    pub fn code(&self, cap: usize) -> Result<HashSet<Vec<u8>>> {
        let cycles = self.cycles(cap)?;
        Ok(cycles.into_iter().map(|(_, labels)| labels).collect())
    }

    /// All cycles as (vertex id sequence, label sequence) pairs.
    pub fn cycles(&self, cap: usize) -> Result<Vec<(Vec<u32>, Vec<u8>)>> {
        let mut out = Vec::new();
        let adj: Vec<HashMap<u32, Vec<(u8, u32)>>> = (0..self.n)
            .map(|i| {
                let mut m: HashMap<u32, Vec<(u8, u32)>> = HashMap::new();
                for &(v, a, w) in &self.edges[i] {
                    m.entry(v).or_default().push((a, w));
                }
                m
            })
            .collect();
        for start in 0..self.vcounts[0] as u32 {
            let mut stack = vec![(0usize, start, Vec::new(), vec![start])];
            while let Some((depth, v, labels, verts)) = stack.pop() {
                if depth == self.n {
                    if v == start {
                        out.push((verts, labels));
                        if out.len() > cap {
                            return Err(Error::BoundExceeded {
                                what: "cycle count",
                                got: out.len(),
                                bound: cap,
                            });
                        }
                    }
                    continue;
                }
                if let Some(nexts) = adj[depth].get(&v) {
                    for &(a, w) in nexts {
                        let mut l2 = labels.clone();
                        l2.push(a);
                        let mut v2 = verts.clone();
                        v2.push(w);
                        stack.push((depth + 1, w, l2, v2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Weakly connected components, counting every vertex.
    pub fn undirected_components(&self) -> usize {
        let offsets: Vec<usize> = {
            let mut off = Vec::with_capacity(self.n + 1);
            let mut acc = 0;
            for &c in &self.vcounts {
                off.push(acc);
                acc += c;
            }
            off.push(acc);
            off
        };
        let total = offsets[self.n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        for i in 0..self.n {
            let j = (i + 1) % self.n;
            for &(v, _, w) in &self.edges[i] {
                let a = offsets[i] + v as usize;
                let b = offsets[j] + w as usize;
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; total];
        let mut comps = 0;
        for s in 0..total {
            if seen[s] {
                continue;
            }
            comps += 1;
            let mut q = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        q.push_back(v);
                    }
                }
            }
        }
        comps
    }

    /// Strong connectivity: a directed path between every ordered vertex
    /// pair.
    pub fn is_connected(&self) -> bool {
        let offsets: Vec<usize> = {
            let mut off = Vec::with_capacity(self.n + 1);
            let mut acc = 0;
            for &c in &self.vcounts {
                off.push(acc);
                acc += c;
            }
            off.push(acc);
            off
        };
        let total = offsets[self.n];
        if total <= 1 {
            return true;
        }
        let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut bwd: Vec<Vec<usize>> = vec![Vec::new(); total];
        for i in 0..self.n {
            let j = (i + 1) % self.n;
            for &(v, _, w) in &self.edges[i] {
                let a = offsets[i] + v as usize;
                let b = offsets[j] + w as usize;
                fwd[a].push(b);
                bwd[b].push(a);
            }
        }
        // Strongly connected iff everything reaches 0 and 0 reaches everything.
        let bfs = |adj: &Vec<Vec<usize>>| -> bool {
            let mut seen = vec![false; total];
            let mut q = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        q.push_back(v);
                    }
                }
            }
            count == total
        };
        bfs(&fwd) && bfs(&bwd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label_code;

    fn f2() -> Field {
        Field::binary()
    }

    fn fv(s: &str) -> FVec {
        FVec::parse(f2(), s).unwrap()
    }

    fn sp(n: usize, a: usize, l: isize) -> Span {
        Span::new(n, a, l).unwrap()
    }

    #[test]
    fn elementary_short_span() {
        let t = Trellis::elementary(&fv("10"), sp(2, 0, 1)).unwrap();
        assert_eq!(t.vdims(), &[0, 1]);
        // Cycle 0 ->1 1 ->0 0: edge spaces <(1,1)> at 0 and <(1,0)> at 1.
        assert!(t.edge_space(0).contains_vec(&fv("11")));
        assert!(t.edge_space(1).contains_vec(&fv("10")));
        assert!(t.is_trim());
    }

    #[test]
    fn elementary_full_span_two_cycles() {
        let t = Trellis::elementary(&fv("10"), Span::full(2)).unwrap();
        assert_eq!(t.vdims(), &[1, 1]);
        let raw = t.to_raw(1 << 12).unwrap();
        assert_eq!(raw.undirected_components(), 2);
        assert!(!raw.is_connected());
    }

    #[test]
    fn elementary_zero_and_errors() {
        let t = Trellis::elementary(&fv("00"), Span::empty(2)).unwrap();
        assert_eq!(t, Trellis::zero(f2(), 2));
        assert!(Trellis::elementary(&fv("10"), Span::empty(2)).is_err());
        assert!(Trellis::elementary(&fv("10"), sp(2, 1, 0)).is_err());
    }

    #[test]
    fn product_adds_codes() {
        let a = Trellis::elementary(&fv("100"), sp(3, 0, 1)).unwrap();
        let b = Trellis::elementary(&fv("011"), sp(3, 1, 1)).unwrap();
        let t = a.product(&b).unwrap();
        assert_eq!(t.vdims(), &[0, 1, 1]);
        let code = label_code::code(&t);
        assert_eq!(code.dim(), 2);
        assert!(code.contains_vec(&fv("100")));
        assert!(code.contains_vec(&fv("011")));
        assert!(code.contains_vec(&fv("111")));
    }

    #[test]
    fn product_with_zero_is_isomorphic_identity() {
        let a = Trellis::elementary(&fv("110"), sp(3, 0, 1)).unwrap();
        let z = Trellis::zero(f2(), 3);
        let p = z.product(&a).unwrap();
        assert_eq!(p.vdims(), a.vdims());
        assert_eq!(label_code::code(&p), label_code::code(&a));
    }

    #[test]
    fn shift_round_trip_and_elementary_shift() {
        let a = Trellis::elementary(&fv("01100"), sp(5, 1, 2)).unwrap();
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(5), a);
        let shifted = a.shift(2);
        let expect = Trellis::elementary(&fv("01100").cyclic_shift(2), sp(5, 1, 2).shift(2)).unwrap();
        assert_eq!(shifted, expect);
    }

    #[test]
    fn cover_repeats_structure() {
        let a = Trellis::elementary(&fv("110"), sp(3, 0, 1)).unwrap();
        assert_eq!(a.cover(1).unwrap(), a);
        let c = a.cover(2).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.vdims(), &[0, 1, 0, 0, 1, 0]);
        assert!(a.cover(0).is_err());
    }

    #[test]
    fn dual_of_zero_trellis_is_free_code() {
        let z = Trellis::zero(f2(), 3);
        let d = z.dual_f2().unwrap();
        // Parallel edges everywhere on 0-dim vertices: represents F2^3.
        assert_eq!(label_code::code(&d), Subspace::full(f2(), 3));
    }

    #[test]
    fn dual_commutes_with_cover() {
        let t = Trellis::elementary(&fv("101"), sp(3, 0, 2)).unwrap();
        let lhs = t.cover(2).unwrap().dual_f2().unwrap();
        let rhs = t.dual_f2().unwrap().cover(2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trim_is_idempotent() {
        let t = Trellis::elementary(&fv("1010"), sp(4, 0, 2)).unwrap();
        let trimmed = t.trim().unwrap();
        assert_eq!(trimmed, t);
        let d = t.dual_f2().unwrap();
        let dt = d.trim().unwrap();
        assert!(dt.is_trim());
        assert_eq!(dt.trim().unwrap(), dt);
    }

    #[test]
    fn realize_example_trellis() {
        // Generators (v, labels): (000,100), (010,100), (001,011).
        let gens = vec![
            fv("010000"),
            fv("011000"),
            fv("000111"),
        ];
        let t = Trellis::realize_from_labelcode(f2(), &[1, 1, 1], &gens).unwrap();
        assert_eq!(t.vdims(), &[0, 1, 1]);
        assert!(t.has_parallel_edges(0));
        assert_eq!(label_code::label_code(&t).dim(), 3);
    }

    #[test]
    fn realize_single_generator_matches_elementary() {
        // Generator with vertex part on (1,2] and labels 011.
        let gens = vec![fv("000111")];
        let t = Trellis::realize_from_labelcode(f2(), &[1, 1, 1], &gens).unwrap();
        let e = Trellis::elementary(&fv("011"), sp(3, 1, 1)).unwrap();
        assert_eq!(t, e);
        let empty: Vec<FVec> = Vec::new();
        let z = Trellis::realize_from_labelcode(f2(), &[0, 0, 0], &empty).unwrap();
        assert_eq!(z, Trellis::zero(f2(), 3));
    }

    #[test]
    fn raw_merge_pair_changes_code() {
        let t = Trellis::elementary(&fv("10"), Span::full(2)).unwrap();
        let raw = t.to_raw(16).unwrap();
        let code = raw.code(1024).unwrap();
        assert_eq!(code.len(), 2);
        let merged = raw.merge_pair(0, 0, 1);
        let code2 = merged.code(1024).unwrap();
        assert!(code2.len() >= code.len());
    }
}
