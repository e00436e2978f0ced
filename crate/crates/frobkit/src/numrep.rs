//! Fixed-length positional representations of nonnegative integers with
//! digit access, comparison, and multi-operand addition with carry tracking.
//!
//! Digits are stored least-significant-first: digit `i` (1-based) has weight
//! `base^(i-1)`. Display order is most-significant-first.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A `k`-place representation in a fixed base `>= 2`.
///
/// The empty representation (length 0) is permitted; it arises only from
/// [`Radix::repeated`] with exponent 0 and has value 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Radix {
    base: u64,
    digits: Vec<u64>, // least-significant-first, each in [0, base-1]
}

/// Outcome of a multi-operand addition: the fixed-length sum, the carry at
/// every digit boundary (`carries[0] = 0`), and the final carry that spills
/// past the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditionResult {
    pub sum: Radix,
    /// `carries[i]` is the carry at the `i`-th digit, `i` in `0..=k`.
    pub carries: Vec<u64>,
    /// The final carry beyond digit `k`; `value(sum) + overflow * base^k`
    /// equals the sum of operand values.
    pub overflow: u64,
}

impl Radix {
    /// Builds the `places`-digit representation of `n`.
    pub fn from_int(n: &BigUint, base: u64, places: usize) -> Result<Radix> {
        check_base(base)?;
        if places == 0 {
            return Err(Error::domain("places must be >= 1"));
        }
        let big_base = BigUint::from(base);
        let mut digits = Vec::with_capacity(places);
        let mut rest = n.clone();
        for _ in 0..places {
            let digit = &rest % &big_base;
            digits.push(biguint_to_u64(&digit));
            rest /= &big_base;
        }
        if !rest.is_zero() {
            return Err(Error::domain(format!(
                "{n} does not fit in {places} base-{base} digits"
            )));
        }
        Ok(Radix { base, digits })
    }

    pub fn from_u64(n: u64, base: u64, places: usize) -> Result<Radix> {
        Radix::from_int(&BigUint::from(n), base, places)
    }

    /// Builds a representation from digits given most-significant-first,
    /// validating each digit against the base.
    pub fn from_digits_msb(base: u64, digits_msb: &[u64]) -> Result<Radix> {
        check_base(base)?;
        for &d in digits_msb {
            if d >= base {
                return Err(Error::domain(format!("digit {d} out of range for base {base}")));
            }
        }
        let mut digits: Vec<u64> = digits_msb.to_vec();
        digits.reverse();
        Ok(Radix { base, digits })
    }

    /// The power-notation constructor: `exponent` copies of `digit`.
    /// Exponent 0 yields the empty representation.
    pub fn repeated(digit: u64, exponent: usize, base: u64) -> Result<Radix> {
        check_base(base)?;
        if digit >= base {
            return Err(Error::domain(format!(
                "digit {digit} out of range for base {base}"
            )));
        }
        Ok(Radix {
            base,
            digits: vec![digit; exponent],
        })
    }

    pub fn to_int(&self) -> BigUint {
        let big_base = BigUint::from(self.base);
        let mut acc = BigUint::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &big_base + BigUint::from(d);
        }
        acc
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The `i`-th digit, 1-based least-significant-first.
    pub fn digit(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.digits.len() {
            return Err(Error::contract(format!(
                "digit index {i} out of range 1..={}",
                self.digits.len()
            )));
        }
        Ok(self.digits[i - 1])
    }

    /// Digits `i..=j` (1-based, least-significant-first) as a new
    /// representation of length `j - i + 1` in the same base.
    pub fn subrep(&self, i: usize, j: usize) -> Result<Radix> {
        if i == 0 || i > j || j > self.digits.len() {
            return Err(Error::contract(format!(
                "subrep range {i}..={j} invalid for length {}",
                self.digits.len()
            )));
        }
        Ok(Radix {
            base: self.base,
            digits: self.digits[i - 1..j].to_vec(),
        })
    }

    /// Concatenates `hi` above `lo`: the result reads `hi` then `lo` in
    /// display (most-significant-first) order.
    pub fn concat(hi: &Radix, lo: &Radix) -> Result<Radix> {
        if hi.base != lo.base {
            return Err(Error::contract(format!(
                "base mismatch: {} vs {}",
                hi.base, lo.base
            )));
        }
        let mut digits = lo.digits.clone();
        digits.extend_from_slice(&hi.digits);
        Ok(Radix {
            base: hi.base,
            digits,
        })
    }

    /// Parses the display format, e.g. `"1 40 0040 (base 5)"`. Spaces group
    /// digits for readability and are ignored. Bases above 10 separate
    /// digits with `.`.
    pub fn parse(s: &str) -> Result<Radix> {
        let s = s.trim();
        let open = s
            .rfind("(base ")
            .ok_or_else(|| Error::parse("missing \"(base N)\" suffix"))?;
        let close = s[open..]
            .find(')')
            .ok_or_else(|| Error::parse("unterminated \"(base N)\" suffix"))?
            + open;
        let base: u64 = s[open + 6..close]
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad base: {e}")))?;
        check_base(base)?;
        let body: String = s[..open].chars().filter(|c| !c.is_whitespace()).collect();
        let mut digits_msb = Vec::new();
        if base <= 10 {
            for c in body.chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(format!("bad digit {c:?}")))? as u64;
                digits_msb.push(d);
            }
        } else if !body.is_empty() {
            for part in body.split('.') {
                let d: u64 = part
                    .parse()
                    .map_err(|e| Error::parse(format!("bad digit {part:?}: {e}")))?;
                digits_msb.push(d);
            }
        }
        Radix::from_digits_msb(base, &digits_msb)
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for &d in self.digits.iter().rev() {
                write!(f, "{d}")?;
            }
        } else {
            let mut first = true;
            for &d in self.digits.iter().rev() {
                if !first {
                    write!(f, ".")?;
                }
                write!(f, "{d}")?;
                first = false;
            }
        }
        write!(f, " (base {})", self.base)
    }
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::domain(format!("base must be >= 2, got {base}")));
    }
    Ok(())
}

fn biguint_to_u64(v: &BigUint) -> u64 {
    // Only called on values < base <= u64::MAX.
    let digits = v.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Adds same-base, same-length representations, tracking carries.
///
/// Digit `i` of the sum is the remainder of the column total (operand digits
/// plus incoming carry) divided by the base; the carry is the quotient.
/// With up to `l` operands a carry may reach `l - 1` plus propagation, so
/// carries are plain integers, not single digits.
pub fn add(operands: &[Radix]) -> Result<AdditionResult> {
    let first = operands
        .first()
        .ok_or_else(|| Error::contract("add requires at least one operand"))?;
    let base = first.base;
    let k = first.digits.len();
    for r in operands {
        if r.base != base || r.digits.len() != k {
            return Err(Error::contract(format!(
                "operand mismatch: expected base {base} length {k}, got base {} length {}",
                r.base,
                r.digits.len()
            )));
        }
    }
    let mut sum = Vec::with_capacity(k);
    let mut carries = Vec::with_capacity(k + 1);
    carries.push(0u64);
    let mut carry = 0u64;
    for i in 0..k {
        let column: u64 = operands.iter().map(|r| r.digits[i]).sum::<u64>() + carry;
        sum.push(column % base);
        carry = column / base;
        carries.push(carry);
    }
    Ok(AdditionResult {
        sum: Radix { base, digits: sum },
        carries,
        overflow: carry,
    })
}

/// Orders two same-base representations by the integers they denote.
/// Lengths may differ.
pub fn compare(r1: &Radix, r2: &Radix) -> Result<Ordering> {
    if r1.base != r2.base {
        return Err(Error::contract(format!(
            "base mismatch: {} vs {}",
            r1.base, r2.base
        )));
    }
    let len = r1.digits.len().max(r2.digits.len());
    for i in (0..len).rev() {
        let d1 = r1.digits.get(i).copied().unwrap_or(0);
        let d2 = r2.digits.get(i).copied().unwrap_or(0);
        match d1.cmp(&d2) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}
