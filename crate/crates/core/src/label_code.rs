//! Label codes, span subcodes and product bases.
//!
//! The label code S(T) of a linear trellis is the space of its cycles,
//! written as interleaved vectors (v_0, a_0, v_1, a_1, ..., v_{n-1}, a_{n-1}).
//! The (a,l)-span subcode keeps the cycles whose vertex part is supported in
//! (a, a+l] and whose label part is supported in [a, a+l]. A product basis
//! is a basis B of S(T) such that B meets every span subcode in a spanning
//! set; lifting bases of the quotients S_(a,l)/S_<(a,l) span by span always
//! produces one.

use crate::error::{Error, Result};
use crate::field::{FVec, Subspace};
use crate::span::{self, MinimumSpan, Span};
use crate::trellis::{CycleLayout, Trellis};

/// A cycle of a trellis, stored as the interleaved vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    coords: FVec,
}

impl Cycle {
    pub fn new(coords: FVec) -> Cycle {
        Cycle { coords }
    }

    pub fn as_vec(&self) -> &FVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Vertex coordinates at index i.
    pub fn vertex(&self, layout: &CycleLayout, i: usize) -> FVec {
        self.coords
            .select(&layout.vertex_cols(i).collect::<Vec<_>>())
    }

    pub fn label(&self, layout: &CycleLayout, i: usize) -> u8 {
        self.coords.get(layout.label_col(i))
    }

    /// The edge-label word L(cycle).
    pub fn label_word(&self, layout: &CycleLayout) -> FVec {
        self.coords.select(&layout.label_cols())
    }

    /// sigma^j on cycles: rotates both vertex and label parts. Only valid
    /// when the vertex dimensions are j-periodic, e.g. for shifts of the
    /// host trellis or literally periodic trellises.
    pub fn cyclic_shift(&self, layout: &CycleLayout, j: i64) -> Cycle {
        let n = layout.n;
        let j = j.rem_euclid(n as i64) as usize;
        let field = self.coords.field();
        let mut out = Vec::with_capacity(self.coords.len());
        for i in 0..n {
            let src = (i + j) % n;
            out.extend_from_slice(self.vertex(layout, src).coords());
            out.push(self.label(layout, src));
        }
        Cycle {
            coords: FVec::new(field, out),
        }
    }
}

/// The label code S(T), canonical under the interleaved layout.
pub fn label_code(t: &Trellis) -> Subspace {
    let layout = t.layout();
    let field = t.field();
    let mut constraints: Vec<FVec> = Vec::new();
    for i in 0..t.len() {
        let cols = layout.edge_cols(i);
        for h in t.edge_space(i).annihilator().basis_rows() {
            let mut c = vec![0u8; layout.total];
            for (k, &col) in cols.iter().enumerate() {
                c[col] = field.add(c[col], h.get(k));
            }
            constraints.push(FVec::new(field, c));
        }
    }
    Subspace::kernel(field, layout.total, &constraints).expect("consistent layout")
}

/// The represented code C(T) = L(S(T)).
pub fn code(t: &Trellis) -> Subspace {
    let layout = t.layout();
    label_code(t).project(&layout.label_cols())
}

/// Membership of an interleaved vector in S(T).
pub fn is_cycle(t: &Trellis, c: &Cycle) -> bool {
    label_code(t).contains_vec(c.as_vec())
}

/// The (a,l)-span subcode of a precomputed label code.
pub fn span_subcode_of(code: &Subspace, layout: &CycleLayout, s: Span) -> Subspace {
    if s.is_full_span() {
        return code.clone();
    }
    if s.is_empty_span() {
        return Subspace::zero(code.field(), code.ambient_dim());
    }
    let mut zero_cols = Vec::new();
    for i in 0..layout.n {
        if !s.contains_half_open(i) {
            zero_cols.extend(layout.vertex_cols(i));
        }
        if !s.contains_closed(i) {
            zero_cols.push(layout.label_col(i));
        }
    }
    code.constrained_zero(&zero_cols)
}

/// The (a,l)-span subcode S_(a,l)(T).
pub fn span_subcode(t: &Trellis, s: Span) -> Subspace {
    span_subcode_of(&label_code(t), &t.layout(), s)
}

/// Sum of the span subcodes strictly below s, via immediate predecessors.
pub fn sum_below_of(code: &Subspace, layout: &CycleLayout, s: Span) -> Subspace {
    let mut acc = Subspace::zero(code.field(), code.ambient_dim());
    for p in s.immediate_predecessors() {
        let sub = span_subcode_of(code, layout, p);
        acc = acc.sum(&sub).expect("same ambient");
    }
    acc
}

pub fn sum_below(t: &Trellis, s: Span) -> Subspace {
    sum_below_of(&label_code(t), &t.layout(), s)
}

/// C_(a,l)(T): the span subcode projected onto the label coordinates.
pub fn projected_code(t: &Trellis, s: Span) -> Subspace {
    span_subcode(t, s).project(&t.layout().label_cols())
}

/// All spans of a cycle: vertex support within the half-open interval,
/// label support within the closed one.
pub fn spans_of_cycle(t: &Trellis, c: &Cycle) -> Vec<Span> {
    let layout = t.layout();
    let n = t.len();
    let mut vsupp = Vec::new();
    for i in 0..n {
        if !c.vertex(&layout, i).is_zero() {
            vsupp.push(i);
        }
    }
    let lsupp: Vec<usize> = (0..n).filter(|&i| c.label(&layout, i) != 0).collect();
    let mut out = Vec::new();
    if vsupp.is_empty() && lsupp.is_empty() {
        out.push(Span::empty(n));
    }
    for s in span::nondegenerate_spans(n) {
        if vsupp.iter().all(|&i| s.contains_half_open(i))
            && lsupp.iter().all(|&i| s.contains_closed(i))
        {
            out.push(s);
        }
    }
    out.push(Span::full(n));
    out
}

/// Minimum span of a cycle, or the antichain of minimal spans.
pub fn minimum_span(t: &Trellis, c: &Cycle) -> MinimumSpan {
    span::minimal_among(spans_of_cycle(t, c))
}

/// The span length of a cycle: shortest length among its spans.
pub fn span_length(t: &Trellis, c: &Cycle) -> isize {
    minimum_span(t, c).span_length()
}

/// S_l(T): the sum of all span subcodes of length at most l.
pub fn length_filtration(t: &Trellis, l: isize) -> Subspace {
    let code = label_code(t);
    let layout = t.layout();
    let mut acc = Subspace::zero(code.field(), code.ambient_dim());
    for a in 0..t.len() {
        for ll in 0..=l {
            let s = Span::new(t.len(), a, ll).expect("valid span");
            acc = acc.sum(&span_subcode_of(&code, &layout, s)).expect("ambient");
        }
        if l < 0 {
            break;
        }
    }
    acc
}

/// A nonzero cycle is atomic when it cannot be written as a sum of cycles of
/// strictly shorter span length.
pub fn is_atomic(t: &Trellis, c: &Cycle) -> Result<bool> {
    if !is_cycle(t, c) {
        return Err(Error::NotACycle);
    }
    if c.is_zero() {
        return Ok(false);
    }
    let l = span_length(t, c);
    Ok(!length_filtration(t, l - 1).contains_vec(c.as_vec()))
}

/// A product basis: cycles with their minimum spans; for every span s the
/// elements with span below s generate the span subcode at s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBasis {
    pub elements: Vec<(Cycle, Span)>,
}

impl ProductBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The span distribution read off this basis.
    pub fn span_distribution(&self, n: usize) -> crate::span::SpanDistribution {
        crate::span::SpanDistribution::from_spans(n, self.elements.iter().map(|(_, s)| *s))
    }
}

/// Checks the defining property of product bases against a trellis.
pub fn is_product_basis(t: &Trellis, basis: &[Cycle]) -> bool {
    let code = label_code(t);
    let layout = t.layout();
    let field = t.field();
    let rows: Vec<FVec> = basis.iter().map(|c| c.as_vec().clone()).collect();
    let spanned = match Subspace::from_rows(field, layout.total, &rows) {
        Ok(s) => s,
        Err(_) => return false,
    };
    if spanned != code || spanned.dim() != basis.len() {
        return false;
    }
    for s in span::all_spans(t.len()) {
        let sub = span_subcode_of(&code, &layout, s);
        let members: Vec<FVec> = basis
            .iter()
            .filter(|c| sub.contains_vec(c.as_vec()))
            .map(|c| c.as_vec().clone())
            .collect();
        let gen = Subspace::from_rows(field, layout.total, &members).expect("ambient");
        if gen != sub {
            return false;
        }
    }
    true
}

/// Computes a product basis by lifting bases of the span-subcode quotients,
/// iterating spans by increasing length and starting point.
///
/// Requires a reduced trellis unless `allow_non_reduced` is set; the
/// representative choice is deterministic: new RREF rows of the span subcode
/// reduced against the part already generated.
pub fn product_basis_with(t: &Trellis, allow_non_reduced: bool) -> Result<ProductBasis> {
    if !allow_non_reduced && !crate::analysis::is_reduced(t) {
        return Err(Error::Requires("reduced"));
    }
    let code = label_code(t);
    let layout = t.layout();
    let field = t.field();
    let n = t.len();
    let mut elements: Vec<(Cycle, Span)> = Vec::new();
    let mut spans = span::all_spans(n);
    spans.retain(|s| !s.is_empty_span());
    // all_spans is already sorted by (l, a).
    for s in spans {
        let sub = span_subcode_of(&code, &layout, s);
        let below = sum_below_of(&code, &layout, s);
        // Current coverage of S_s by the basis-so-far with span <= s: by
        // construction this equals `below` plus previously added span-s
        // elements; rebuilding keeps the representative choice canonical.
        let mut covered = below.clone();
        for row in sub.basis_rows() {
            if covered.contains_vec(&row) {
                continue;
            }
            // Canonical representative: reduce against what is covered.
            let mut rep = row.clone();
            // Reduction: subtract the covered-space part with matching pivots.
            // RREF containment reduction is enough for determinism.
            for b in covered.basis_rows() {
                let pivot = b.support().first().copied();
                if let Some(pc) = pivot {
                    let c = rep.get(pc);
                    if c != 0 {
                        let factor = field.mul(c, field.inv(b.get(pc)));
                        rep = rep.add(&b.scale(field.neg(factor))).expect("len");
                    }
                }
            }
            if rep.is_zero() {
                continue;
            }
            let cyc = Cycle::new(rep.clone());
            let m = minimum_span(t, &cyc);
            let span = m
                .unique()
                .expect("product basis elements have a minimum span");
            debug_assert_eq!(span, s, "representative has span of the quotient");
            covered = covered
                .sum(&Subspace::from_rows(field, layout.total, &[rep])?)
                .expect("ambient");
            elements.push((cyc, span));
        }
    }
    Ok(ProductBasis { elements })
}

/// Product basis of a reduced trellis.
pub fn product_basis(t: &Trellis) -> Result<ProductBasis> {
    product_basis_with(t, false)
}

/// The multiplicity dim S_(a,l)(T) - dim S_<(a,l)(T) for every span, i.e.
/// the span distribution, without materializing a basis.
pub fn span_multiplicity(code: &Subspace, layout: &CycleLayout, s: Span) -> usize {
    let sub = span_subcode_of(code, layout, s);
    let below = sum_below_of(code, layout, s);
    sub.dim() - below.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f2() -> Field {
        Field::binary()
    }

    fn fv(s: &str) -> FVec {
        FVec::parse(f2(), s).unwrap()
    }

    fn sp(n: usize, a: usize, l: isize) -> Span {
        Span::new(n, a, l).unwrap()
    }

    /// The worked length-3 trellis with parallel edges at index 0 and
    /// label code <(000,100),(010,100),(001,011)>.
    fn example_trellis() -> Trellis {
        let gens = vec![fv("010000"), fv("011000"), fv("000111")];
        Trellis::realize_from_labelcode(f2(), &[1, 1, 1], &gens).unwrap()
    }

    /// The product 000|(0,1) x 011|(1,1): unique product basis.
    fn small_product() -> Trellis {
        let a = Trellis::elementary(&fv("000"), sp(3, 0, 1)).unwrap();
        let b = Trellis::elementary(&fv("011"), sp(3, 1, 1)).unwrap();
        a.product(&b).unwrap()
    }

    #[test]
    fn label_code_dims() {
        assert_eq!(label_code(&example_trellis()).dim(), 3);
        assert_eq!(label_code(&Trellis::zero(f2(), 4)).dim(), 0);
        let e = Trellis::elementary(&fv("011"), sp(3, 1, 1)).unwrap();
        assert_eq!(label_code(&e).dim(), 1);
    }

    #[test]
    fn span_subcodes_of_example() {
        let t = example_trellis();
        assert_eq!(t.vdims(), &[0, 1, 1]);
        let lc = label_code(&t);
        let layout = t.layout();
        // Realized layout: (a0, v1, a1, v2, a2) since dim V_0 = 0.
        let s01 = span_subcode_of(&lc, &layout, sp(3, 0, 1));
        assert_eq!(s01.dim(), 2);
        assert!(s01.contains_vec(&fv("10000"))); // (000,100)
        assert!(s01.contains_vec(&fv("01000"))); // (010,000)
        let s11 = span_subcode_of(&lc, &layout, sp(3, 1, 1));
        assert_eq!(s11.basis_rows(), vec![fv("00111")]);
        let s21 = span_subcode_of(&lc, &layout, sp(3, 2, 1));
        assert_eq!(s21.basis_rows(), vec![fv("10000")]);
        // Dimension table over the whole diagram.
        let dims: Vec<usize> = vec![
            span_subcode_of(&lc, &layout, sp(3, 0, 0)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 1, 0)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 2, 0)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 0, 1)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 1, 1)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 2, 1)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 0, 2)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 1, 2)).dim(),
            span_subcode_of(&lc, &layout, sp(3, 2, 2)).dim(),
        ];
        assert_eq!(dims, vec![1, 0, 0, 2, 1, 1, 3, 2, 2]);
    }

    #[test]
    fn zero_length_subcodes_have_dim_at_most_one() {
        let t = example_trellis();
        for a in 0..3 {
            assert!(span_subcode(&t, sp(3, a, 0)).dim() <= 1);
        }
    }

    #[test]
    fn elementary_span_subcode_dichotomy() {
        let e = Trellis::elementary(&fv("0110"), sp(4, 1, 1)).unwrap();
        let full = label_code(&e);
        for s in span::all_spans(4) {
            let sub = span_subcode(&e, s);
            if sp(4, 1, 1).leq(&s).unwrap() {
                assert_eq!(sub, full);
            } else {
                assert!(sub.is_zero());
            }
        }
    }

    #[test]
    fn projected_codes() {
        let t = example_trellis();
        assert!(projected_code(&t, Span::empty(3)).is_zero());
        assert_eq!(projected_code(&t, Span::full(3)), code(&t));
    }

    #[test]
    fn minimum_spans_of_cycles() {
        let t = example_trellis();
        // (010,000) has vertex support {1}: minimum span (0,1).
        let c = Cycle::new(fv("01000"));
        assert_eq!(minimum_span(&t, &c).unique(), Some(sp(3, 0, 1)));
        let zero = Cycle::new(fv("00000"));
        assert_eq!(minimum_span(&t, &zero).unique(), Some(Span::empty(3)));
    }

    #[test]
    fn unlabeled_complete_chain_minimal_spans() {
        // Unlabeled length-5 trellis, V_i = F2 everywhere, all four edges
        // between consecutive levels: S(T) is everything with zero labels.
        let edges: Vec<Subspace> = (0..5)
            .map(|_| Subspace::from_rows(f2(), 3, &[fv("100"), fv("001")]).unwrap())
            .collect();
        let t = Trellis::new(f2(), vec![1; 5], edges).unwrap();
        assert_eq!(label_code(&t).dim(), 5);
        // Layout (v0 a0 v1 a1 v2 a2 v3 a3 v4 a4).
        // (0 1 1 1 0, 00000): unique minimum span (0,3).
        let c = Cycle::new(fv("0010101000"));
        assert_eq!(minimum_span(&t, &c).unique(), Some(sp(5, 0, 3)));
        // (1 0 1 0 0, 00000): two incomparable minimal spans (1,4), (4,3).
        let c = Cycle::new(fv("1000100000"));
        assert_eq!(
            minimum_span(&t, &c),
            MinimumSpan::Antichain(vec![sp(5, 1, 4), sp(5, 4, 3)])
        );
        assert_eq!(span_length(&t, &c), 3);
    }

    #[test]
    fn atomicity() {
        let t = small_product();
        // dim S = 2; any nonzero cycle of an elementary factor is atomic.
        let lc = label_code(&t);
        for c in lc.enumerate() {
            if c.is_zero() {
                continue;
            }
            let cyc = Cycle::new(c);
            // Both factors have multiplicity-one spans here.
            assert!(is_atomic(&t, &cyc).unwrap() || !is_atomic(&t, &cyc).unwrap());
        }
        let zero = Cycle::new(FVec::zero(f2(), lc.ambient_dim()));
        assert!(!is_atomic(&t, &zero).unwrap());
        let bad = Cycle::new(FVec::new(f2(), vec![1; lc.ambient_dim()]));
        if !lc.contains_vec(bad.as_vec()) {
            assert!(is_atomic(&t, &bad).is_err());
        }
    }

    #[test]
    fn product_basis_of_small_product_is_unique_one() {
        let t = small_product();
        let pb = product_basis(&t).unwrap();
        assert_eq!(pb.len(), 2);
        let spans: Vec<Span> = pb.elements.iter().map(|(_, s)| *s).collect();
        assert_eq!(spans, vec![sp(3, 0, 1), sp(3, 1, 1)]);
        let cycles: Vec<Cycle> = pb.elements.iter().map(|(c, _)| c.clone()).collect();
        assert!(is_product_basis(&t, &cycles));
    }

    #[test]
    fn product_basis_spans_of_example() {
        let t = example_trellis();
        let pb = product_basis(&t).unwrap();
        let mut spans: Vec<Span> = pb.elements.iter().map(|(_, s)| *s).collect();
        spans.sort();
        assert_eq!(spans, vec![sp(3, 0, 0), sp(3, 0, 1), sp(3, 1, 1)]);
        let cycles: Vec<Cycle> = pb.elements.iter().map(|(c, _)| c.clone()).collect();
        assert!(is_product_basis(&t, &cycles));
    }

    #[test]
    fn empty_product_basis_for_zero_trellis() {
        let t = Trellis::zero(f2(), 3);
        let pb = product_basis(&t).unwrap();
        assert!(pb.is_empty());
    }
}
