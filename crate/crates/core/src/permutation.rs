//! Permutations of `{1, ..., n}` with disjoint-cycle decomposition.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`.
///
/// Cycles are canonical: each starts at its smallest symbol, cycles are sorted
/// by that symbol, and fixed points appear as 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    // 0-based: images[k] = pi(k)
    images: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    order: u64,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self::from_images0((0..n).collect()).expect("identity is a bijection")
    }

    /// Builds a permutation from 1-based images `pi(1), ..., pi(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::SymbolOutOfRange { symbol: img, n });
            }
            zero_based.push(img - 1);
        }
        Self::from_images0(zero_based)
    }

    fn from_images0(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::NotABijection { n });
            }
            seen[img] = true;
        }
        let mut visited = alloc::vec![false; n];
        let mut cycles = Vec::new();
        let mut order: u64 = 1;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                cycle.push(k);
                k = images[k];
            }
            order = lcm(order, cycle.len() as u64).ok_or(Error::OrderOverflow)?;
            cycles.push(cycle);
        }
        Ok(Self { images, cycles, order })
    }

    /// Number of symbols `n`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `pi(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.images.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.images.len() });
        }
        Ok(self.images[k - 1] + 1)
    }

    /// `pi(k)` for 0-based `k`; panics when out of range.
    pub(crate) fn image0(&self, k: usize) -> usize {
        self.images[k]
    }

    /// 1-based images `pi(1), ..., pi(n)`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// Disjoint cycles as 1-based symbols, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles.iter().map(|c| c.iter().map(|&k| k + 1).collect()).collect()
    }

    /// Cycle `l` (0-based index) as 0-based symbols.
    pub(crate) fn cycle0(&self, l: usize) -> &[usize] {
        &self.cycles[l]
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Cycle lengths in canonical cycle order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// `s = lcm` of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Self::from_images0(other.images.iter().map(|&k| self.images[k]).collect())
    }

    pub fn pow(&self, e: u64) -> Permutation {
        let mut images: Vec<usize> = (0..self.len()).collect();
        for k in 0..self.len() {
            let cycle_len = self.cycles.iter().find(|c| c.contains(&k)).map_or(1, Vec::len);
            let steps = (e % cycle_len as u64) as usize;
            let mut j = k;
            for _ in 0..steps {
                j = self.images[j];
            }
            images[k] = j;
        }
        Self::from_images0(images).expect("power of a permutation is a permutation")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation omitting fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles.iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, k) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", k + 1)?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `"(1 2)(3 4 5)"` over `{1, ..., n}`.
///
/// Omitted symbols are fixed points; `""` and `"()"` denote the identity.
/// Symbols inside a cycle are separated by whitespace (commas are tolerated).
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let bytes = text.as_bytes();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = alloc::vec![false; n];
    let mut pos = 0;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(Error::MalformedSyntax { position: pos, reason: "expected '('" });
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                pos += 1;
            }
            if pos == bytes.len() {
                return Err(Error::MalformedSyntax { position: pos, reason: "unclosed cycle" });
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if !bytes[pos].is_ascii_digit() {
                return Err(Error::MalformedSyntax { position: pos, reason: "expected a positive integer" });
            }
            let start = pos;
            let mut value: usize = 0;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((bytes[pos] - b'0') as usize))
                    .ok_or(Error::MalformedSyntax { position: start, reason: "integer too large" })?;
                pos += 1;
            }
            if value == 0 || value > n {
                return Err(Error::SymbolOutOfRange { symbol: value, n });
            }
            if used[value - 1] {
                return Err(Error::RepeatedSymbol { symbol: value });
            }
            used[value - 1] = true;
            cycle.push(value - 1);
        }
        for (idx, &k) in cycle.iter().enumerate() {
            images[k] = cycle[(idx + 1) % cycle.len()];
        }
    }
    Permutation::from_images0(images)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn transposition() {
        let p = parse_cycles("(1 2)", 2).unwrap();
        assert_eq!(p.images(), [2, 1]);
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn mixed_cycles_order_is_lcm() {
        let p = parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycles(), vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(p.apply(5).unwrap(), 3);
        assert_eq!(p.apply(1).unwrap(), 2);
    }

    #[test]
    fn identity_spellings() {
        for text in ["", "()", "  ( ) "] {
            let p = parse_cycles(text, 3).unwrap();
            assert!(p.is_identity());
            assert_eq!(p.cycles().len(), 3);
            assert_eq!(p.apply(3).unwrap(), 3);
        }
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn single_five_cycle() {
        assert_eq!(parse_cycles("(1 2 3 4 5)", 5).unwrap().order(), 5);
    }

    #[test]
    fn fixed_points_are_one_cycles() {
        let p = parse_cycles("(2 4)", 4).unwrap();
        assert_eq!(p.cycles(), vec![vec![1], vec![2, 4], vec![3]]);
        assert_eq!(p.to_string(), "(2 4)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_cycles("(1 2)(2 3)", 3), Err(Error::RepeatedSymbol { symbol: 2 }));
        assert_eq!(parse_cycles("(1 4)", 3), Err(Error::SymbolOutOfRange { symbol: 4, n: 3 }));
        assert_eq!(parse_cycles("(0 1)", 3), Err(Error::SymbolOutOfRange { symbol: 0, n: 3 }));
        assert!(matches!(parse_cycles("(1 2", 3), Err(Error::MalformedSyntax { .. })));
        assert!(matches!(parse_cycles("1 2", 3), Err(Error::MalformedSyntax { .. })));
        assert!(matches!(parse_cycles("(1 -2)", 3), Err(Error::MalformedSyntax { .. })));
    }

    #[test]
    fn apply_out_of_range() {
        let p = Permutation::identity(3);
        assert!(matches!(p.apply(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.apply(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert_eq!(Permutation::from_images(&[1, 1]), Err(Error::NotABijection { n: 2 }));
        assert!(Permutation::from_images(&[0, 1]).is_err());
    }
}
