//! Circular spans (a,l) of Z_n and their partial order.
//!
//! A span of length l, 0 <= l <= n-1, denotes the circular interval
//! [a, a+l] of Z_n. The degenerate spans are the empty span (length -1,
//! a span only of the zero vector) and the full span Z_n (length n, a span
//! of everything). Degenerate spans carry no starting point and compare
//! equal regardless of the `a` they were built with.

use crate::error::{Error, Result};
use crate::field::FVec;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    n: usize,
    a: usize,
    l: isize,
}

impl Span {
    /// A span (a, l) of Z_n; l in [-1, n]. Degenerate spans normalize a to 0.
    pub fn new(n: usize, a: usize, l: isize) -> Result<Span> {
        if l < -1 || l > n as isize {
            return Err(Error::SpanLengthOutOfRange { l, n });
        }
        if l == -1 || l == n as isize {
            Ok(Span { n, a: 0, l })
        } else {
            Ok(Span { n, a: a % n, l })
        }
    }

    pub fn empty(n: usize) -> Span {
        Span { n, a: 0, l: -1 }
    }

    pub fn full(n: usize) -> Span {
        Span { n, a: 0, l: n as isize }
    }

    pub fn ambient_len(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn len(&self) -> isize {
        self.l
    }

    pub fn is_empty_span(&self) -> bool {
        self.l == -1
    }

    pub fn is_full_span(&self) -> bool {
        self.l == self.n as isize
    }

    pub fn is_degenerate(&self) -> bool {
        self.is_empty_span() || self.is_full_span()
    }

    pub fn end(&self) -> usize {
        debug_assert!(!self.is_degenerate());
        (self.a + self.l as usize) % self.n
    }

    /// Membership in the closed interval [a, a+l].
    pub fn contains_closed(&self, i: usize) -> bool {
        if self.is_empty_span() {
            return false;
        }
        if self.is_full_span() {
            return true;
        }
        let i = i % self.n;
        let off = (i + self.n - self.a) % self.n;
        off <= self.l as usize
    }

    /// Membership in the half-open interval (a, a+l].
    pub fn contains_half_open(&self, i: usize) -> bool {
        if self.is_empty_span() {
            return false;
        }
        if self.is_full_span() {
            return true;
        }
        let i = i % self.n;
        let off = (i + self.n - self.a) % self.n;
        off >= 1 && off <= self.l as usize
    }

    /// A span is conventional when it is contained in (0, n-1).
    pub fn is_conventional(&self) -> bool {
        if self.is_empty_span() {
            return true;
        }
        if self.is_full_span() {
            return false;
        }
        self.leq_unchecked(&Span::new(self.n, 0, self.n as isize - 1).unwrap())
    }

    pub(crate) fn leq_unchecked(&self, other: &Span) -> bool {
        debug_assert_eq!(self.n, other.n);
        let n = self.n as isize;
        if self.l == -1 || other.l == n {
            return true;
        }
        if self.l == n || other.l == -1 {
            return false;
        }
        if other.l == n - 1 {
            // Half-open containment (a1, a1+l1] subset of (a2, a2+l2].
            (0..self.n).all(|i| !self.contains_half_open(i) || other.contains_half_open(i))
        } else if self.l <= other.l {
            (0..self.n).all(|i| !self.contains_closed(i) || other.contains_closed(i))
        } else {
            false
        }
    }

    /// The partial order on spans.
    pub fn leq(&self, other: &Span) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SpanAmbientMismatch(self.n, other.n));
        }
        Ok(self.leq_unchecked(other))
    }

    pub fn lt(&self, other: &Span) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    /// Immediate predecessors in the Hasse diagram.
    pub fn immediate_predecessors(&self) -> Vec<Span> {
        let n = self.n;
        if self.is_empty_span() {
            return vec![];
        }
        if self.is_full_span() {
            if n == 0 {
                return vec![];
            }
            return (0..n)
                .map(|a| Span::new(n, a, n as isize - 1).unwrap())
                .collect();
        }
        if self.l == 0 {
            return vec![Span::empty(n)];
        }
        vec![
            Span::new(n, self.a, self.l - 1).unwrap(),
            Span::new(n, (self.a + 1) % n, self.l - 1).unwrap(),
        ]
    }

    /// Every span strictly below this one.
    pub fn strictly_below(&self) -> Vec<Span> {
        all_spans(self.n)
            .into_iter()
            .filter(|s| s.leq_unchecked(self) && s != self)
            .collect()
    }

    /// sigma^j on spans: the starting point moves back by j.
    pub fn shift(&self, j: i64) -> Span {
        if self.is_degenerate() || self.n == 0 {
            return *self;
        }
        let n = self.n as i64;
        let a = (self.a as i64 - j).rem_euclid(n) as usize;
        Span { n: self.n, a, l: self.l }
    }
}

/// All spans of Z_n including the two degenerate ones, sorted by (l, a).
pub fn all_spans(n: usize) -> Vec<Span> {
    let mut out = vec![Span::empty(n)];
    for l in 0..n as isize {
        for a in 0..n {
            out.push(Span::new(n, a, l).unwrap());
        }
    }
    out.push(Span::full(n));
    out
}

/// Nondegenerate spans only, sorted by (l, a).
pub fn nondegenerate_spans(n: usize) -> Vec<Span> {
    let mut out = Vec::with_capacity(n * n);
    for l in 0..n as isize {
        for a in 0..n {
            out.push(Span::new(n, a, l).unwrap());
        }
    }
    out
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty_span() {
            write!(f, "empty")
        } else if self.is_full_span() {
            write!(f, "full")
        } else {
            write!(f, "({},{})", self.a, self.l)
        }
    }
}

impl PartialOrd for Span {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by (n, l, a) for deterministic sorting and serialization.
/// This is unrelated to the span partial order `leq`.
impl Ord for Span {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.l, self.a).cmp(&(other.n, other.l, other.a))
    }
}

/// Spans of a word v: all (a,l) with supp(v) inside [a, a+l], plus Z_n,
/// plus the empty span when v = 0.
pub fn spans_of_word(v: &FVec) -> Vec<Span> {
    let n = v.len();
    let supp = v.support();
    let mut out = Vec::new();
    if supp.is_empty() {
        out.push(Span::empty(n));
    }
    for s in nondegenerate_spans(n) {
        if supp.iter().all(|&i| s.contains_closed(i)) {
            out.push(s);
        }
    }
    out.push(Span::full(n));
    out
}

/// Result of a minimum-span query: either a unique minimum or the antichain
/// of minimal spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimumSpan {
    Unique(Span),
    Antichain(Vec<Span>),
}

impl MinimumSpan {
    pub fn unique(&self) -> Option<Span> {
        match self {
            MinimumSpan::Unique(s) => Some(*s),
            MinimumSpan::Antichain(_) => None,
        }
    }

    pub fn minimal_spans(&self) -> Vec<Span> {
        match self {
            MinimumSpan::Unique(s) => vec![*s],
            MinimumSpan::Antichain(v) => v.clone(),
        }
    }

    /// The span length: minimum length over all spans.
    pub fn span_length(&self) -> isize {
        self.minimal_spans()
            .iter()
            .map(|s| s.len())
            .min()
            .expect("at least one minimal span")
    }
}

pub(crate) fn minimal_among(spans: Vec<Span>) -> MinimumSpan {
    let minimal: Vec<Span> = spans
        .iter()
        .filter(|s| {
            !spans
                .iter()
                .any(|t| t != *s && t.leq_unchecked(s))
        })
        .copied()
        .collect();
    if minimal.len() == 1 {
        MinimumSpan::Unique(minimal[0])
    } else {
        MinimumSpan::Antichain(minimal)
    }
}

/// Minimum span of a word, or the antichain of minimal spans.
pub fn minimal_span_of_word(v: &FVec) -> MinimumSpan {
    minimal_among(spans_of_word(v))
}

/// A multiset of spans with multiplicities, e.g. the span distribution of a
/// linear trellis. Serializes sorted by (l, a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanDistribution {
    n: usize,
    counts: BTreeMap<Span, usize>,
}

impl SpanDistribution {
    pub fn new(n: usize) -> SpanDistribution {
        SpanDistribution {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_spans(n: usize, spans: impl IntoIterator<Item = Span>) -> SpanDistribution {
        let mut d = SpanDistribution::new(n);
        for s in spans {
            d.add(s, 1);
        }
        d
    }

    pub fn ambient_len(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, s: Span, mult: usize) {
        if mult > 0 {
            *self.counts.entry(s).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, s: &Span) -> usize {
        self.counts.get(s).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Span, &usize)> {
        self.counts.iter()
    }

    pub fn spans(&self) -> Vec<Span> {
        self.counts.keys().copied().collect()
    }

    /// Spans of positive length.
    pub fn positive_part(&self) -> SpanDistribution {
        let counts = self
            .counts
            .iter()
            .filter(|(s, _)| s.len() > 0)
            .map(|(s, c)| (*s, *c))
            .collect();
        SpanDistribution { n: self.n, counts }
    }

    /// Length-zero spans (a set by construction).
    pub fn zero_part(&self) -> SpanDistribution {
        let counts = self
            .counts
            .iter()
            .filter(|(s, _)| s.len() == 0)
            .map(|(s, c)| (*s, *c))
            .collect();
        SpanDistribution { n: self.n, counts }
    }

    /// Applies sigma^j to every span.
    pub fn shift(&self, j: i64) -> SpanDistribution {
        let counts = self
            .counts
            .iter()
            .map(|(s, c)| (s.shift(j), *c))
            .collect();
        SpanDistribution { n: self.n, counts }
    }
}

impl fmt::Display for SpanDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{{{")?;
        for (s, &c) in &self.counts {
            for _ in 0..c {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{s}")?;
                first = false;
            }
        }
        write!(f, "}}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn sp(n: usize, a: usize, l: isize) -> Span {
        Span::new(n, a, l).unwrap()
    }

    #[test]
    fn order_examples() {
        // Adjacent lengths are comparable per the Hasse diagram.
        assert!(sp(3, 0, 0).leq(&sp(3, 0, 1)).unwrap());
        // Empty below everything.
        for s in all_spans(4) {
            assert!(Span::empty(4).leq(&s).unwrap());
            assert!(s.leq(&Span::full(4)).unwrap());
        }
        // n = 5 checks, including the half-open rule at l = n-1.
        assert!(sp(5, 1, 2).leq(&sp(5, 0, 4)).unwrap());
        assert!(!sp(5, 1, 2).leq(&sp(5, 3, 3)).unwrap());
        assert!(sp(5, 3, 3).leq(&sp(5, 3, 4)).unwrap());
        assert!(sp(5, 4, 3).leq(&sp(5, 3, 4)).unwrap());
        assert!(!sp(5, 2, 3).leq(&sp(5, 3, 4)).unwrap());
    }

    #[test]
    fn mismatched_n_is_an_error() {
        assert!(sp(3, 0, 0).leq(&sp(4, 0, 0)).is_err());
    }

    #[test]
    fn partial_order_axioms_exhaustive() {
        for n in 1..=6 {
            let spans = all_spans(n);
            for s in &spans {
                assert!(s.leq(s).unwrap(), "reflexive {s}");
            }
            for s in &spans {
                for t in &spans {
                    if s.leq(t).unwrap() && t.leq(s).unwrap() {
                        assert_eq!(s, t, "antisymmetry {s} {t}");
                    }
                    for u in &spans {
                        if s.leq(t).unwrap() && t.leq(u).unwrap() {
                            assert!(s.leq(u).unwrap(), "transitivity {s} {t} {u}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn predecessors_match_downward_closure() {
        for n in 1..=6 {
            for s in all_spans(n) {
                let preds = s.immediate_predecessors();
                for p in &preds {
                    assert!(p.leq(&s).unwrap() && *p != s);
                }
                // strictly_below equals union of predecessors' closures.
                let below = s.strictly_below();
                let mut via_preds: Vec<Span> = preds
                    .iter()
                    .flat_map(|p| {
                        let mut v = p.strictly_below();
                        v.push(*p);
                        v
                    })
                    .collect();
                via_preds.sort();
                via_preds.dedup();
                let mut below_sorted = below.clone();
                below_sorted.sort();
                below_sorted.dedup();
                assert_eq!(below_sorted, via_preds, "span {s} n={n}");
            }
        }
    }

    #[test]
    fn preds_of_small_spans() {
        let preds = sp(3, 0, 1).immediate_predecessors();
        assert_eq!(preds, vec![sp(3, 0, 0), sp(3, 1, 0)]);
        assert!(Span::empty(3).immediate_predecessors().is_empty());
        assert_eq!(Span::full(3).strictly_below().len(), 10);
    }

    #[test]
    fn word_spans() {
        let f = Field::binary();
        let v = FVec::parse(f, "10").unwrap();
        let spans = spans_of_word(&v);
        assert_eq!(
            spans,
            vec![sp(2, 0, 0), sp(2, 0, 1), sp(2, 1, 1), Span::full(2)]
        );

        let zero = FVec::zero(f, 4);
        assert_eq!(
            minimal_span_of_word(&zero),
            MinimumSpan::Unique(Span::empty(4))
        );

        // supp(10100) = {0,2} fits in both [0,2] and the wrapping [2,0].
        let v = FVec::parse(f, "10100").unwrap();
        assert_eq!(
            minimal_span_of_word(&v),
            MinimumSpan::Antichain(vec![sp(5, 0, 2), sp(5, 2, 3)])
        );
        let v = FVec::parse(f, "00100").unwrap();
        assert_eq!(minimal_span_of_word(&v), MinimumSpan::Unique(sp(5, 2, 0)));
    }

    #[test]
    fn minimal_spans_form_antichain() {
        let f = Field::binary();
        for n in 1..=6usize {
            for bits in 1..(1u32 << n) {
                let coords: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
                let v = FVec::new(f, coords);
                let m = minimal_span_of_word(&v);
                let spans = m.minimal_spans();
                for s in &spans {
                    for t in &spans {
                        if s != t {
                            assert!(!s.leq(t).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shift_span_behaviour() {
        assert_eq!(sp(5, 3, 3).shift(1), sp(5, 2, 3));
        assert_eq!(sp(5, 1, 2).shift(2), sp(5, 4, 2));
        for s in all_spans(5) {
            assert_eq!(s.shift(5), s);
        }
        assert_eq!(Span::empty(4).shift(3), Span::empty(4));
        assert_eq!(Span::full(4).shift(3), Span::full(4));
    }

    #[test]
    fn distribution_display_sorted() {
        let mut d = SpanDistribution::new(5);
        d.add(sp(5, 3, 4), 1);
        d.add(sp(5, 1, 2), 1);
        d.add(sp(5, 3, 3), 1);
        assert_eq!(format!("{d}"), "{{(1,2), (3,3), (3,4)}}");
    }
}
