//! Exact linear algebra over ℚ and prime fields.
//!
//! Two routes to a rank are provided: fraction-free Bareiss elimination on
//! integer matrices (used for ℚ homology) and Gauss–Jordan over a [`Field`]
//! (used wherever bases of kernels or quotients are needed). Tests check the
//! two against each other.

use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..1u64 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// `0` for ℚ.
    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl core::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field arithmetic with a runtime context (the modulus for 𝔽ₚ).
pub trait Field: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn int(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// Exact rational. Values whose reduced numerator and denominator fit in
/// `i64` are always stored inline, so equality is structural; everything
/// else falls back to a big rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

impl Rat {
    pub const ZERO: Rat = Rat::Small { num: 0, den: 1 };
    pub const ONE: Rat = Rat::Small { num: 1, den: 1 };

    pub fn integer(v: i64) -> Rat {
        Rat::Small { num: v, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        if num == 0 {
            return Rat::ZERO;
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Rat::Small { num, den },
            _ => Rat::Big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        use num_traits::ToPrimitive;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rat::Small { num, den },
            _ => Rat::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small { num, den } => BigRational::new(BigInt::from(*num), BigInt::from(*den)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small { num: 0, .. })
    }
}

impl core::fmt::Display for Rat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Rat::Small { num, den: 1 } => write!(f, "{num}"),
            Rat::Small { num, den } => write!(f, "{num}/{den}"),
            Rat::Big(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::ZERO
    }
    fn one(&self) -> Rat {
        Rat::ONE
    }
    fn int(&self, v: i64) -> Rat {
        Rat::integer(v)
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => Rat::from_i128(
                *a as i128 * *d as i128 + *c as i128 * *b as i128,
                *b as i128 * *d as i128,
            ),
            _ => Rat::from_big(a.to_big() + b.to_big()),
        }
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => Rat::from_i128(
                *a as i128 * *d as i128 - *c as i128 * *b as i128,
                *b as i128 * *d as i128,
            ),
            _ => Rat::from_big(a.to_big() - b.to_big()),
        }
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(a.to_big() * b.to_big()),
        }
    }
    fn neg(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small { num, den } => Rat::from_i128(-(*num as i128), *den as i128),
            Rat::Big(r) => Rat::from_big(-r),
        }
    }
    fn inv(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small { num, den } => Rat::from_i128(*den as i128, *num as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }
}

/// 𝔽ₚ with `p < 2^31`, elements reduced to `0..p`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::prime(p as u64)?;
        Ok(PrimeField { p: p as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
}

/// Dense row-major integer matrix (boundary and Koszul differentials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// `self · other`; panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0)
    }

    /// Rank over the given field: Bareiss for ℚ, modular elimination for 𝔽ₚ.
    pub fn rank(&self, field: FieldSpec) -> usize {
        match field {
            FieldSpec::Rational => bareiss_rank(self),
            FieldSpec::Prime(p) => {
                let f = PrimeField { p: p as u64 };
                rank(&f, &self.to_field(&f))
            }
        }
    }

    pub fn to_field<F: Field>(&self, field: &F) -> Matrix<F::Elem> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| field.int(*v)).collect(),
        }
    }
}

/// Rank of an integer matrix over ℚ by fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the input, so the divisions are
/// exact.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dense row-major matrix over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![value; rows * cols],
        }
    }

    /// Matrix whose columns are `columns` (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Self::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col));
        for c in col..m.cols {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(f, &mut work).len()
}

/// Basis of `{ x : m x = 0 }`, one vector per free column.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work);
    let mut is_pivot = alloc::vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = alloc::vec![f.zero(); m.cols];
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(work.get(row, free));
            }
            v
        })
        .collect()
}

/// Incrementally maintained echelon basis of a subspace of `F^dim`.
///
/// Rows are kept reduced against each other's pivots, so membership and
/// insertion are a single reduction pass.
#[derive(Debug, Clone)]
pub struct Span<E> {
    dim: usize,
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone + PartialEq + Debug> Span<E> {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(f, v);
        let Some(pivot) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[pivot]);
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}
