//! Exact linear algebra over prime fields GF(p).
//!
//! Everything downstream (trellises, label codes, factorizations) reduces to
//! the primitives in this module: canonical row-reduced subspaces, kernels,
//! sums, intersections and coordinate projections. All values are immutable
//! after construction.

use crate::error::{Error, Result};
use std::fmt;

/// A prime field GF(p), p >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u16,
}

fn is_prime(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p as u32 {
        if p as u32 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u16) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Field { p })
    }

    /// GF(2), the default field throughout.
    pub fn binary() -> Field {
        Field { p: 2 }
    }

    pub fn modulus(&self) -> u16 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p - b as u16) % self.p) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.p - a as u16) as u8
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p) as u8
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0 && (a as u16) < self.p);
        // p is tiny; a linear scan beats bookkeeping.
        for x in 1..self.p {
            if self.mul(a, x as u8) == 1 {
                return x as u8;
            }
        }
        unreachable!("nonzero element of a prime field has an inverse")
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.p as u8
    }

    fn check_same(&self, other: &Field) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }
}

/// A vector with coordinates in GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVec {
    coords: Vec<u8>,
    field: Field,
}

impl FVec {
    pub fn new(field: Field, coords: Vec<u8>) -> FVec {
        debug_assert!(coords.iter().all(|&c| (c as u16) < field.modulus()));
        FVec { coords, field }
    }

    pub fn zero(field: Field, len: usize) -> FVec {
        FVec {
            coords: vec![0; len],
            field,
        }
    }

    pub fn unit(field: Field, len: usize, pos: usize) -> FVec {
        let mut coords = vec![0; len];
        coords[pos] = 1;
        FVec { coords, field }
    }

    /// Parses a digit string like "01011" over GF(p), p <= 10.
    pub fn parse(field: Field, s: &str) -> Result<FVec> {
        let mut coords = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let d = ch.to_digit(10).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("invalid digit '{ch}'"),
            })? as u16;
            if d >= field.modulus() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("digit {d} out of range for GF({})", field.modulus()),
                });
            }
            coords.push(d as u8);
        }
        Ok(FVec { coords, field })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coords[i] != 0).collect()
    }

    pub fn add(&self, other: &FVec) -> Result<FVec> {
        self.field.check_same(&other.field)?;
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FVec {
            coords,
            field: self.field,
        })
    }

    pub fn scale(&self, c: u8) -> FVec {
        let coords = self.coords.iter().map(|&a| self.field.mul(a, c)).collect();
        FVec {
            coords,
            field: self.field,
        }
    }

    /// Left cyclic shift by j positions: (v_0 v_1 ... ) -> (v_j v_{j+1} ...).
    pub fn cyclic_shift(&self, j: i64) -> FVec {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let j = j.rem_euclid(n as i64) as usize;
        let mut coords = Vec::with_capacity(n);
        for i in 0..n {
            coords.push(self.coords[(i + j) % n]);
        }
        FVec {
            coords,
            field: self.field,
        }
    }

    /// Canonical representative of the projective class: scales so that the
    /// first nonzero coordinate is 1. Zero maps to itself.
    pub fn projective_rep(&self) -> FVec {
        match self.coords.iter().find(|&&c| c != 0) {
            None => self.clone(),
            Some(&c) => self.scale(self.field.inv(c)),
        }
    }

    /// Restriction to the given coordinate positions.
    pub fn select(&self, cols: &[usize]) -> FVec {
        FVec {
            coords: cols.iter().map(|&c| self.coords[c]).collect(),
            field: self.field,
        }
    }
}

impl fmt::Display for FVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.modulus() <= 10 {
            for &c in &self.coords {
                write!(f, "{c}")?;
            }
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over GF(p). Internal workhorse for row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[&[u8]]) -> Mat {
        let mut m = Mat::zero(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row r_target -= factor * r_source.
    fn row_sub_scaled(&mut self, target: usize, source: usize, factor: u8) {
        if factor == 0 {
            return;
        }
        let f = self.field;
        let (cols, p) = (self.cols, f.modulus());
        let src_off = source * cols;
        let tgt_off = target * cols;
        if p == 2 {
            for c in 0..cols {
                self.data[tgt_off + c] ^= self.data[src_off + c];
            }
        } else {
            for c in 0..cols {
                let s = self.data[src_off + c];
                let t = self.data[tgt_off + c];
                self.data[tgt_off + c] = f.sub(t, f.mul(factor, s));
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: u8) {
        if factor == 1 {
            return;
        }
        let f = self.field;
        for c in 0..self.cols {
            self.data[r * self.cols + c] = f.mul(self.data[r * self.cols + c], factor);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.field.inv(self.at(r, c));
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.at(i, c);
                    self.row_sub_scaled(i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// A subspace of GF(p)^n in canonical reduced-row-echelon form.
///
/// Two `Subspace` values compare equal exactly when their row spaces are
/// equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    /// RREF basis rows, no zero rows, pivot columns strictly increasing.
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(GF({}), dim {} of {}",
            self.field.modulus(),
            self.dim(),
            self.ambient
        )?;
        for row in &self.basis {
            write!(f, ", {}", FVec::new(self.field, row.clone()))?;
        }
        write!(f, ")")
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut row = vec![0; ambient];
                row[i] = 1;
                row
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical RREF span of the given rows.
    pub fn from_rows(field: Field, ambient: usize, rows: &[FVec]) -> Result<Subspace> {
        for r in rows {
            field.check_same(&r.field())?;
            if r.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    got: r.len(),
                });
            }
        }
        let raw: Vec<&[u8]> = rows.iter().map(|r| r.coords()).collect();
        Ok(Self::from_raw_rows(field, ambient, &raw))
    }

    pub(crate) fn from_raw_rows(field: Field, ambient: usize, rows: &[&[u8]]) -> Subspace {
        let mut m = Mat::from_rows(field, ambient, rows);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Right null space of the matrix whose rows are `constraints`.
    pub fn kernel(field: Field, ambient: usize, constraints: &[FVec]) -> Result<Subspace> {
        for r in constraints {
            field.check_same(&r.field())?;
            if r.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    got: r.len(),
                });
            }
        }
        let raw: Vec<&[u8]> = constraints.iter().map(|r| r.coords()).collect();
        Ok(Self::kernel_raw(field, ambient, &raw))
    }

    pub(crate) fn kernel_raw(field: Field, ambient: usize, constraints: &[&[u8]]) -> Subspace {
        let mut m = Mat::from_rows(field, ambient, constraints);
        let pivots = m.rref();
        let rank = pivots.len();
        let is_pivot = {
            let mut v = vec![false; ambient];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        // One kernel basis vector per free column.
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for free in 0..ambient {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u8; ambient];
            v[free] = 1;
            for r in 0..rank {
                let c = pivots[r];
                // pivot entry is 1, so x_c = -m[r][free] * x_free
                v[c] = field.neg(m.at(r, free));
            }
            rows.push(v);
        }
        let raw: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_raw_rows(field, ambient, &raw)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_rows(&self) -> Vec<FVec> {
        self.basis
            .iter()
            .map(|r| FVec::new(self.field, r.clone()))
            .collect()
    }

    pub(crate) fn raw_basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::LengthMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the basis; returns the remainder.
    fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for i in 0..self.ambient {
                    w[i] = f.sub(w[i], f.mul(c, row[i]));
                }
            }
        }
        w
    }

    pub fn contains_vec(&self, v: &FVec) -> bool {
        if v.len() != self.ambient || v.field() != self.field {
            return false;
        }
        self.reduce(v.coords()).iter().all(|&c| c == 0)
    }

    /// Coordinates of `v` in terms of the RREF basis, if `v` lies here.
    pub fn coordinates_of(&self, v: &FVec) -> Option<FVec> {
        if v.len() != self.ambient || v.field() != self.field {
            return None;
        }
        let mut coeffs = vec![0u8; self.dim()];
        let f = self.field;
        let mut w = v.coords().to_vec();
        for (r, (row, &pc)) in self.basis.iter().zip(&self.pivots).enumerate() {
            let c = w[pc];
            if c != 0 {
                coeffs[r] = c;
                for i in 0..self.ambient {
                    w[i] = f.sub(w[i], f.mul(c, row[i]));
                }
            }
        }
        if w.iter().all(|&c| c == 0) {
            Some(FVec::new(f, coeffs))
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        other.basis.iter().all(|r| {
            self.reduce(r).iter().all(|&c| c == 0)
        })
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut raw: Vec<&[u8]> = Vec::with_capacity(self.dim() + other.dim());
        raw.extend(self.basis.iter().map(|r| r.as_slice()));
        raw.extend(other.basis.iter().map(|r| r.as_slice()));
        Ok(Self::from_raw_rows(self.field, self.ambient, &raw))
    }

    /// Annihilator under the standard scalar product.
    pub fn annihilator(&self) -> Subspace {
        let raw: Vec<&[u8]> = self.basis.iter().map(|r| r.as_slice()).collect();
        Self::kernel_raw(self.field, self.ambient, &raw)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    /// dim(self) - dim(other); requires other <= self.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        if !self.contains(other) {
            return Err(Error::NotContained);
        }
        Ok(self.dim() - other.dim())
    }

    /// Image under selection of the given coordinates.
    pub fn project(&self, cols: &[usize]) -> Subspace {
        let rows: Vec<Vec<u8>> = self
            .basis
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        let raw: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_raw_rows(self.field, cols.len(), &raw)
    }

    /// Subspace of vectors here whose coordinates vanish on `cols`.
    pub fn constrained_zero(&self, cols: &[usize]) -> Subspace {
        // Solve for coefficient vectors of the basis.
        let k = self.dim();
        let rows: Vec<Vec<u8>> = cols
            .iter()
            .map(|&c| (0..k).map(|r| self.basis[r][c]).collect())
            .collect();
        let raw: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let coeff_kernel = Self::kernel_raw(self.field, k, &raw);
        let f = self.field;
        let out: Vec<Vec<u8>> = coeff_kernel
            .basis
            .iter()
            .map(|coeffs| {
                let mut v = vec![0u8; self.ambient];
                for (r, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for i in 0..self.ambient {
                            v[i] = f.add(v[i], f.mul(c, self.basis[r][i]));
                        }
                    }
                }
                v
            })
            .collect();
        let raw: Vec<&[u8]> = out.iter().map(|r| r.as_slice()).collect();
        Self::from_raw_rows(f, self.ambient, &raw)
    }

    /// All elements, in lexicographic order of basis coefficients.
    /// Intended for small subspaces; guarded by callers.
    pub fn enumerate(&self) -> Vec<FVec> {
        let p = self.field.modulus() as usize;
        let k = self.dim();
        let total = p.checked_pow(k as u32).unwrap_or(usize::MAX);
        let mut out = Vec::with_capacity(total);
        let f = self.field;
        let mut coeffs = vec![0u8; k];
        loop {
            let mut v = vec![0u8; self.ambient];
            for (r, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for i in 0..self.ambient {
                        v[i] = f.add(v[i], f.mul(c, self.basis[r][i]));
                    }
                }
            }
            out.push(FVec::new(f, v));
            // increment
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if (coeffs[i] as usize) < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Convenience: canonical span of rows (the spec-level `rref` operation).
pub fn rref(rows: &[FVec], ambient_dim: usize) -> Result<Subspace> {
    let field = match rows.first() {
        Some(r) => r.field(),
        None => Field::binary(),
    };
    Subspace::from_rows(field, ambient_dim, rows)
}

/// Canonical basis of the right null space (the spec-level `solve_kernel`).
pub fn solve_kernel(constraints: &[FVec], ambient_dim: usize) -> Result<Subspace> {
    let field = match constraints.first() {
        Some(r) => r.field(),
        None => Field::binary(),
    };
    Subspace::kernel(field, ambient_dim, constraints)
}
