//! Arithmetic over the four-element field `{0, 1, ω, ω̄}`.
//!
//! A symbol is stored as the pair of bits `(x, z)` of its Pauli operator:
//! `0 ↔ I = (0,0)`, `ω ↔ X = (1,0)`, `ω̄ ↔ Z = (0,1)`, `1 ↔ Y = (1,1)`.
//! Field addition is then a XOR of the codes and the Hermitian trace product
//! `tr(a·b̄)` is the symplectic form `a.x·b.z + a.z·b.x`.

use std::fmt;
use std::ops::{Add, Mul};

use crate::gf2::BitRow;
use crate::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum F4 {
    #[default]
    Zero = 0,
    Omega = 1,
    OmegaBar = 2,
    One = 3,
}

/// Symbols in the fixed tie-breaking order used by the decoders: `0, ω, ω̄, 1`.
pub const SYMBOLS: [F4; 4] = [F4::Zero, F4::Omega, F4::OmegaBar, F4::One];

impl F4 {
    #[inline]
    pub const fn from_bits(x: bool, z: bool) -> F4 {
        match (x, z) {
            (false, false) => F4::Zero,
            (true, false) => F4::Omega,
            (false, true) => F4::OmegaBar,
            (true, true) => F4::One,
        }
    }

    #[inline]
    pub const fn from_code(code: u8) -> F4 {
        match code & 3 {
            0 => F4::Zero,
            1 => F4::Omega,
            2 => F4::OmegaBar,
            _ => F4::One,
        }
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn x(self) -> bool {
        self as u8 & 1 != 0
    }

    #[inline]
    pub const fn z(self) -> bool {
        self as u8 & 2 != 0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        matches!(self, F4::Zero)
    }

    /// Frobenius conjugation `x ↦ x²`.
    #[inline]
    pub const fn conj(self) -> F4 {
        match self {
            F4::Omega => F4::OmegaBar,
            F4::OmegaBar => F4::Omega,
            other => other,
        }
    }

    /// `tr(x) = x + x²`, identified with a bit.
    #[inline]
    pub const fn trace(self) -> bool {
        self.x() ^ self.z()
    }

    /// `tr(a·b̄)`: true iff the Pauli operators of `self` and `other` anticommute.
    #[inline]
    pub const fn herm(self, other: F4) -> bool {
        let a = self as u8;
        let b = other as u8;
        (((a & 1) & (b >> 1)) ^ ((a >> 1) & (b & 1))) != 0
    }

    pub const fn pauli(self) -> char {
        match self {
            F4::Zero => 'I',
            F4::Omega => 'X',
            F4::OmegaBar => 'Z',
            F4::One => 'Y',
        }
    }

    /// Text rendering used in files and logs.
    pub const fn to_char(self) -> char {
        match self {
            F4::Zero => '.',
            F4::Omega => 'w',
            F4::OmegaBar => 'W',
            F4::One => 'y',
        }
    }

    pub fn from_char(c: char) -> Option<F4> {
        match c {
            '.' => Some(F4::Zero),
            'w' => Some(F4::Omega),
            'W' => Some(F4::OmegaBar),
            'y' => Some(F4::One),
            _ => None,
        }
    }

    // 1 = ω⁰, ω = ω¹, ω̄ = ω².
    const fn log(self) -> u8 {
        match self {
            F4::One => 0,
            F4::Omega => 1,
            F4::OmegaBar => 2,
            F4::Zero => u8::MAX,
        }
    }

    const fn exp(e: u8) -> F4 {
        match e % 3 {
            0 => F4::One,
            1 => F4::Omega,
            _ => F4::OmegaBar,
        }
    }
}

impl Add for F4 {
    type Output = F4;

    #[inline]
    fn add(self, rhs: F4) -> F4 {
        F4::from_code(self.code() ^ rhs.code())
    }
}

impl Mul for F4 {
    type Output = F4;

    #[inline]
    fn mul(self, rhs: F4) -> F4 {
        if self.is_zero() || rhs.is_zero() {
            F4::Zero
        } else {
            F4::exp(self.log() + rhs.log())
        }
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn f4_add(a: F4, b: F4) -> F4 {
    a + b
}

pub fn f4_mul(a: F4, b: F4) -> F4 {
    a * b
}

pub fn f4_trace(x: F4) -> bool {
    x.trace()
}

pub fn herm_pair(a: F4, b: F4) -> bool {
    a.herm(b)
}

/// A Pauli error or stabilizer row as a vector over F4.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct F4Vector(pub Vec<F4>);

impl F4Vector {
    pub fn zeros(n: usize) -> Self {
        F4Vector(vec![F4::Zero; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[F4] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    /// Componentwise sum; lengths must agree.
    pub fn add(&self, other: &F4Vector) -> Result<F4Vector> {
        check_len(self.len(), other.len())?;
        Ok(F4Vector(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect(),
        ))
    }

    pub fn to_symplectic(&self) -> BinarySymplecticVector {
        let n = self.len();
        let mut bits = BitRow::zeros(2 * n);
        for (i, s) in self.0.iter().enumerate() {
            if s.x() {
                bits.set(i);
            }
            if s.z() {
                bits.set(n + i);
            }
        }
        BinarySymplecticVector { n, bits }
    }

    pub fn from_symplectic(v: &BinarySymplecticVector) -> F4Vector {
        F4Vector(
            (0..v.n)
                .map(|i| F4::from_bits(v.bits.get(i), v.bits.get(v.n + i)))
                .collect(),
        )
    }
}

impl From<Vec<F4>> for F4Vector {
    fn from(v: Vec<F4>) -> Self {
        F4Vector(v)
    }
}

impl fmt::Display for F4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

/// `⟨u, v⟩ = tr Σ uᵢ v̄ᵢ`.
pub fn vec_inner(u: &F4Vector, v: &F4Vector) -> Result<bool> {
    check_len(u.len(), v.len())?;
    Ok(u.0
        .iter()
        .zip(&v.0)
        .fold(false, |acc, (&a, &b)| acc ^ a.herm(b)))
}

pub fn to_symplectic(v: &F4Vector) -> BinarySymplecticVector {
    v.to_symplectic()
}

/// Binary image of an F4 vector: bits `0..n` hold the x-parts, bits `n..2n` the z-parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinarySymplecticVector {
    pub n: usize,
    pub bits: BitRow,
}

impl BinarySymplecticVector {
    pub fn x_bit(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn z_bit(&self, i: usize) -> bool {
        self.bits.get(self.n + i)
    }

    pub fn xor(&self, other: &BinarySymplecticVector) -> Result<BinarySymplecticVector> {
        check_len(self.n, other.n)?;
        let mut bits = self.bits.clone();
        bits.xor_with(&other.bits);
        Ok(BinarySymplecticVector { n: self.n, bits })
    }
}
