//! Exact arithmetic in the inner-abelian group
//!
//! ```text
//! H(p,t,s) = < a, b, c | a^(p^t) = b^(p^s) = c^p = 1, [a,b] = c, [c,a] = [c,b] = 1 >
//! ```
//!
//! Every element has a unique normal form `a^x b^y c^z` with `0 <= x < p^t`,
//! `0 <= y < p^s` and `0 <= z < p`. Since `c` is central and `b a = a b c^-1`,
//! products are given by
//!
//! ```text
//! (x1, y1, z1) (x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 - x2 y1)
//! ```
//!
//! The [`oracle`] submodule multiplies by literal word rewriting instead and
//! is kept as the reference the closed formula is checked against.

use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::residue::{inv_mod, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),
    #[error("element {0} is not in normal form for these parameters")]
    NotInGroup(GroupElement),
    #[error("order mismatch: image of {generator} has order {found}, expected {expected}")]
    OrderMismatch { generator: char, expected: u64, found: u64 },
    #[error("not generating: the images do not generate the group")]
    NotGenerating,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator '{found}' at position {position}")]
    UnknownGenerator { found: char, position: usize },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
}

/// The group `H(p,t,s)`; all element operations go through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    p: u64,
    t: u32,
    s: u32,
    pt: u64,
    ps: u64,
    order: u64,
}

/// Normal form `a^x b^y c^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    x: u64,
    y: u64,
    z: u64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { x: 0, y: 0, z: 0 };

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.x, self.y, self.z)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{} c^{}", self.x, self.y, self.z)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        tup.serialize_element(&self.x)?;
        tup.serialize_element(&self.y)?;
        tup.serialize_element(&self.z)?;
        tup.end()
    }
}

impl GroupParams {
    pub fn new(p: u64, t: u32, s: u32) -> Result<Self, GroupError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(GroupError::InvalidParams(format!("{p} is not an odd prime")));
        }
        if s < 1 || t < s {
            return Err(GroupError::InvalidParams(format!("need t >= s >= 1, got t={t}, s={s}")));
        }
        let overflow = || GroupError::InvalidParams(format!("order {p}^{} overflows 64 bits", t + s + 1));
        let order = p.checked_pow(t + s + 1).ok_or_else(overflow)?;
        Ok(GroupParams { p, t, s, pt: p.pow(t), ps: p.pow(s), order })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `p^t`, the order of `a` and the exponent of the group.
    pub fn a_order(&self) -> u64 {
        self.pt
    }

    /// `p^s`, the order of `b`.
    pub fn b_order(&self) -> u64 {
        self.ps
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn a(&self) -> GroupElement {
        GroupElement { x: 1 % self.pt, y: 0, z: 0 }
    }

    pub fn b(&self) -> GroupElement {
        GroupElement { x: 0, y: 1 % self.ps, z: 0 }
    }

    pub fn c(&self) -> GroupElement {
        GroupElement { x: 0, y: 0, z: 1 }
    }

    /// The element `a^x b^y c^z`, exponents reduced into range.
    pub fn element(&self, x: i128, y: i128, z: i128) -> GroupElement {
        GroupElement {
            x: x.rem_euclid(self.pt as i128) as u64,
            y: y.rem_euclid(self.ps as i128) as u64,
            z: z.rem_euclid(self.p as i128) as u64,
        }
    }

    /// Like [`element`](Self::element) but rejects out-of-range exponents.
    pub fn checked_element(&self, x: u64, y: u64, z: u64) -> Result<GroupElement, GroupError> {
        let g = GroupElement { x, y, z };
        self.check(&g)?;
        Ok(g)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.x < self.pt && g.y < self.ps && g.z < self.p
    }

    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::NotInGroup(*g))
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(g) && self.contains(h));
        let p = self.p;
        let cross = (h.x % p) * (g.y % p) % p;
        GroupElement {
            x: (g.x + h.x) % self.pt,
            y: (g.y + h.y) % self.ps,
            z: (g.z + h.z + p - cross) % p,
        }
    }

    pub fn try_multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.multiply(g, h))
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.identity(), |acc, g| self.multiply(&acc, g))
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let p = self.p;
        let xy = (g.x % p) * (g.y % p) % p;
        GroupElement {
            x: (self.pt - g.x) % self.pt,
            y: (self.ps - g.y) % self.ps,
            z: (2 * p - g.z - xy) % p,
        }
    }

    /// `g^n` by square-and-multiply; negative `n` inverts first.
    pub fn power(&self, g: &GroupElement, n: i64) -> GroupElement {
        let mut base = if n < 0 { self.inverse(g) } else { *g };
        let mut exp = n.unsigned_abs();
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// `g^-1 h^-1 g h`
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.product([&gi, &hi, g, h])
    }

    /// Every element order is a power of `p` dividing `p^t`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        let mut n = 1u64;
        for _ in 0..=self.t {
            if self.power(g, n as i64).is_identity() {
                return n;
            }
            n *= self.p;
        }
        unreachable!("group exponent is p^t")
    }

    /// `<u, v> = H` iff `u, v` are independent modulo the Frattini subgroup
    /// `<a^p, b^p, c>`.
    pub fn is_generating_pair(&self, u: &GroupElement, v: &GroupElement) -> bool {
        let p = self.p;
        let det = ((u.x % p) * (v.y % p) + p * p - (u.y % p) * (v.x % p)) % p;
        det != 0
    }

    /// Whether the set generates `H`.
    pub fn generates(&self, set: &[GroupElement]) -> bool {
        set.iter()
            .enumerate()
            .any(|(i, u)| set[i + 1..].iter().any(|v| self.is_generating_pair(u, v)))
    }

    pub fn rank(&self, g: &GroupElement) -> u64 {
        (g.x * self.ps + g.y) * self.p + g.z
    }

    pub fn unrank(&self, index: u64) -> Result<GroupElement, GroupError> {
        if index >= self.order {
            return Err(GroupError::IndexOutOfRange { index, order: self.order });
        }
        Ok(self.unrank_unchecked(index))
    }

    pub(crate) fn unrank_unchecked(&self, index: u64) -> GroupElement {
        GroupElement {
            x: index / (self.ps * self.p),
            y: index / self.p % self.ps,
            z: index % self.p,
        }
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.unrank_unchecked(i))
    }

    /// The `p + 1` maximal subgroups: `<a b^j, b^p, c>` for `j` in `Z_p`,
    /// then `<a^p, b, c>`.
    pub fn maximal_subgroups(&self) -> Vec<MaximalSubgroup> {
        let p = self.p;
        let keep = |gens: Vec<GroupElement>| gens.into_iter().filter(|g| !g.is_identity()).collect();
        let factors = |v: [u64; 3]| v.into_iter().filter(|&f| f > 1).collect();
        let mut out: Vec<MaximalSubgroup> = (0..p)
            .map(|j| {
                let abj = self.multiply(&self.a(), &self.power(&self.b(), j as i64));
                MaximalSubgroup {
                    p,
                    kind: MaximalKind::ABPower(j),
                    generators: keep(vec![abj, self.power(&self.b(), p as i64), self.c()]),
                    order: self.order / p,
                    invariant_factors: factors([self.pt, self.ps / p, p]),
                }
            })
            .collect();
        out.push(MaximalSubgroup {
            p,
            kind: MaximalKind::APowerB,
            generators: keep(vec![self.power(&self.a(), p as i64), self.b(), self.c()]),
            order: self.order / p,
            invariant_factors: factors([self.pt / p, self.ps, p]),
        });
        out
    }

    /// Parse a word such as `a^2*b^-1 c`.
    pub fn parse_word(&self, text: &str) -> Result<GroupElement, GroupError> {
        let terms = parse_terms(text)?;
        Ok(terms.iter().fold(self.identity(), |acc, &(gen, exp)| {
            let g = match gen {
                Generator::A => self.a(),
                Generator::B => self.b(),
                Generator::C => self.c(),
            };
            self.multiply(&acc, &self.power(&g, exp))
        }))
    }

    /// Smallest `n >= 1` with `g^n = 1` by repeated multiplication; only for
    /// cross-checking [`element_order`](Self::element_order).
    pub fn element_order_naive(&self, g: &GroupElement) -> u64 {
        let mut acc = *g;
        let mut n = 1;
        while !acc.is_identity() {
            acc = self.multiply(&acc, g);
            n += 1;
        }
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    A,
    B,
    C,
}

/// Tokenise `word := term (('*' | whitespace) term)*`,
/// `term := ('a'|'b'|'c') ('^' signed-integer)?`.
pub fn parse_terms(text: &str) -> Result<Vec<(Generator, i64)>, GroupError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let pos_of = |i: usize| chars.get(i).map_or(text.len(), |&(p, _)| p);
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(GroupError::Syntax { position: 0, message: "empty word".into() });
    }
    loop {
        let (pos, ch) = chars[i];
        let gen = match ch {
            'a' => Generator::A,
            'b' => Generator::B,
            'c' => Generator::C,
            c if c.is_alphabetic() => return Err(GroupError::UnknownGenerator { found: c, position: pos }),
            c => {
                return Err(GroupError::Syntax { position: pos, message: format!("expected a generator, found '{c}'") })
            }
        };
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i].1 == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i == digits_start {
                return Err(GroupError::Syntax { position: pos_of(i), message: "expected an integer exponent".into() });
            }
            let lit = &text[pos_of(start)..pos_of(i)];
            exp = lit.parse().map_err(|_| GroupError::Syntax {
                position: pos_of(start),
                message: format!("exponent '{lit}' out of range"),
            })?;
        }
        terms.push((gen, exp));
        let before = i;
        skip_ws(&mut i);
        if i == chars.len() {
            return Ok(terms);
        }
        if chars[i].1 == '*' {
            i += 1;
            skip_ws(&mut i);
            if i == chars.len() {
                return Err(GroupError::Syntax { position: text.len(), message: "dangling '*'".into() });
            }
        } else if i == before {
            return Err(GroupError::Syntax {
                position: pos_of(i),
                message: format!("expected '*' or whitespace, found '{}'", chars[i].1),
            });
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalKind {
    /// `<a b^j, b^p, c>`
    ABPower(u64),
    /// `<a^p, b, c>`
    APowerB,
}

/// A maximal subgroup given by generators, order and membership test rather
/// than an element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubgroup {
    p: u64,
    pub kind: MaximalKind,
    pub generators: Vec<GroupElement>,
    pub order: u64,
    /// Orders of the cyclic factors of the (abelian) subgroup.
    pub invariant_factors: Vec<u64>,
}

impl MaximalSubgroup {
    /// Maximal subgroups contain the Frattini subgroup, so membership only
    /// depends on `(x mod p, y mod p)`.
    pub fn contains(&self, g: &GroupElement) -> bool {
        let p = self.p;
        match self.kind {
            MaximalKind::ABPower(j) => g.y % p == j * (g.x % p) % p,
            MaximalKind::APowerB => g.x % p == 0,
        }
    }
}

/// An automorphism of `H(p,t,s)` recorded by the images of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    params: GroupParams,
    image_a: GroupElement,
    image_b: GroupElement,
    image_c: GroupElement,
}

impl GroupAutomorphism {
    pub fn identity(params: GroupParams) -> Self {
        GroupAutomorphism { params, image_a: params.a(), image_b: params.b(), image_c: params.c() }
    }

    /// The automorphism `a -> u`, `b -> v`. It exists iff `o(u) = p^t`,
    /// `o(v) = p^s` and `{u, v}` generates.
    pub fn from_images(params: GroupParams, u: GroupElement, v: GroupElement) -> Result<Self, GroupError> {
        params.check(&u)?;
        params.check(&v)?;
        if !params.is_generating_pair(&u, &v) {
            return Err(GroupError::NotGenerating);
        }
        let ou = params.element_order(&u);
        if ou != params.pt {
            return Err(GroupError::OrderMismatch { generator: 'a', expected: params.pt, found: ou });
        }
        let ov = params.element_order(&v);
        if ov != params.ps {
            return Err(GroupError::OrderMismatch { generator: 'b', expected: params.ps, found: ov });
        }
        let image_c = params.commutator(&u, &v);
        Ok(GroupAutomorphism { params, image_a: u, image_b: v, image_c })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn image_a(&self) -> GroupElement {
        self.image_a
    }

    pub fn image_b(&self) -> GroupElement {
        self.image_b
    }

    pub fn image_c(&self) -> GroupElement {
        self.image_c
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let h = &self.params;
        let parts = [
            h.power(&self.image_a, g.x as i64),
            h.power(&self.image_b, g.y as i64),
            h.power(&self.image_c, g.z as i64),
        ];
        h.product(&parts)
    }

    /// Images of all elements in rank order, built from running products.
    pub fn table(&self) -> Vec<GroupElement> {
        let h = &self.params;
        let mut out = Vec::with_capacity(h.order as usize);
        let mut ux = h.identity();
        for _ in 0..h.pt {
            let mut uxvy = ux;
            for _ in 0..h.ps {
                let mut g = uxvy;
                for _ in 0..h.p {
                    out.push(g);
                    g = h.multiply(&g, &self.image_c);
                }
                uxvy = h.multiply(&uxvy, &self.image_b);
            }
            ux = h.multiply(&ux, &self.image_a);
        }
        out
    }

    /// `self` first, then `other`: `compose(other).apply(g) == other.apply(self.apply(g))`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            params: self.params,
            image_a: other.apply(&self.image_a),
            image_b: other.apply(&self.image_b),
            image_c: other.apply(&self.image_c),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image_a == self.params.a() && self.image_b == self.params.b()
    }

    /// The element mapped to `g`. Searches the abelianisation, so it costs
    /// `O(p^(t+s))` automorphism applications.
    pub fn preimage(&self, g: &GroupElement) -> GroupElement {
        let h = &self.params;
        let p = h.p;
        // image_c = c^m with m a unit mod p
        let m_inv = inv_mod(self.image_c.z, p).expect("image of c generates the derived subgroup");
        for x in 0..h.pt {
            let ax = h.power(&self.image_a, x as i64);
            for y in 0..h.ps {
                let cand = h.multiply(&ax, &h.power(&self.image_b, y as i64));
                if cand.x == g.x && cand.y == g.y {
                    let z = (g.z + p - cand.z) % p * m_inv % p;
                    return GroupElement { x, y, z };
                }
            }
        }
        unreachable!("automorphisms are surjective")
    }

    /// The inverse automorphism.
    pub fn inverse(&self) -> GroupAutomorphism {
        let params = self.params;
        let a = self.preimage(&params.a());
        let b = self.preimage(&params.b());
        GroupAutomorphism { params, image_a: a, image_b: b, image_c: params.commutator(&a, &b) }
    }
}

pub mod oracle {
    //! Multiplication by literal word rewriting, independent of the closed
    //! product formula.

    use super::{Generator, GroupElement, GroupParams};

    /// Reduce a word in `a, b, c` to normal form by expanding it into single
    /// letters, moving every `c` to the right (it is central) and bubbling
    /// each `b a` into `a b c^-1` until all `a` letters precede all `b`s.
    pub fn rewrite(params: &GroupParams, word: &[(Generator, i64)]) -> GroupElement {
        let p = params.p() as i128;
        let pt = params.a_order() as i128;
        let ps = params.b_order() as i128;
        let mut letters: Vec<u8> = Vec::new();
        let mut c_count: i128 = 0;
        for &(gen, exp) in word {
            match gen {
                Generator::A => letters.extend(std::iter::repeat_n(b'a', (exp as i128).rem_euclid(pt) as usize)),
                Generator::B => letters.extend(std::iter::repeat_n(b'b', (exp as i128).rem_euclid(ps) as usize)),
                Generator::C => c_count += exp as i128,
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..letters.len().saturating_sub(1) {
                if letters[i] == b'b' && letters[i + 1] == b'a' {
                    letters.swap(i, i + 1);
                    c_count += p - 1;
                    changed = true;
                }
            }
        }
        let a_count = letters.iter().filter(|&&l| l == b'a').count() as i128;
        let b_count = letters.len() as i128 - a_count;
        params.element(a_count, b_count, c_count)
    }

    pub fn word_of(g: &GroupElement) -> [(Generator, i64); 3] {
        [(Generator::A, g.x() as i64), (Generator::B, g.y() as i64), (Generator::C, g.z() as i64)]
    }

    pub fn multiply(params: &GroupParams, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut word = word_of(g).to_vec();
        word.extend(word_of(h));
        rewrite(params, &word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(p: u64, t: u32, s: u32) -> GroupParams {
        GroupParams::new(p, t, s).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(GroupParams::new(2, 1, 1).is_err());
        assert!(GroupParams::new(9, 1, 1).is_err());
        assert!(GroupParams::new(3, 1, 2).is_err());
        assert!(GroupParams::new(3, 1, 0).is_err());
        assert!(GroupParams::new(3, 30, 20).is_err());
    }

    #[test]
    fn multiply_examples() {
        for g in [h(3, 1, 1), h(5, 2, 1), h(7, 3, 2)] {
            let (a, b, c) = (g.a(), g.b(), g.c());
            assert_eq!(g.multiply(&a, &b).triple(), (1, 1, 0));
            assert_eq!(g.multiply(&b, &a).triple(), (1, 1, g.p() - 1));
            assert_eq!(oracle::multiply(&g, &b, &a).triple(), (1, 1, g.p() - 1));
            let comm = g.product([&g.inverse(&a), &g.inverse(&b), &a, &b]);
            assert_eq!(comm, c);
            assert_eq!(g.commutator(&a, &b), c);
            assert!(g.commutator(&c, &a).is_identity());
            assert!(g.commutator(&c, &b).is_identity());
        }
    }

    #[test]
    fn mismatched_element_rejected() {
        let small = h(3, 1, 1);
        let big = h(3, 2, 1);
        let g = big.element(5, 0, 0);
        assert_eq!(small.try_multiply(&g, &small.a()), Err(GroupError::NotInGroup(g)));
        assert!(small.checked_element(0, 3, 0).is_err());
    }

    #[test]
    fn inverse_and_power() {
        let g = h(5, 2, 1);
        assert!(g.inverse(&g.identity()).is_identity());
        for x in g.elements().step_by(7) {
            assert!(g.multiply(&x, &g.inverse(&x)).is_identity());
            assert!(g.multiply(&g.inverse(&x), &x).is_identity());
            let mut acc = g.identity();
            for n in 0..12 {
                assert_eq!(g.power(&x, n), acc);
                assert_eq!(g.power(&x, -n), g.inverse(&acc));
                acc = g.multiply(&acc, &x);
            }
        }
        let ab = g.multiply(&g.a(), &g.b());
        let p = g.p() as i64;
        assert_eq!(g.power(&ab, p), g.multiply(&g.power(&g.a(), p), &g.power(&g.b(), p)));
    }

    #[test]
    fn order_examples() {
        let g = h(7, 2, 1);
        assert_eq!(g.element_order(&g.a()), 49);
        assert_eq!(g.element_order(&g.identity()), 1);
        let ba3 = g.multiply(&g.b(), &g.power(&g.a(), 3));
        assert_eq!(g.element_order(&ba3), 49);
        for x in g.elements().step_by(13) {
            assert_eq!(g.element_order(&x), g.element_order_naive(&x));
        }
    }

    #[test]
    fn generating_pairs() {
        let g = h(3, 1, 1);
        let (a, b, c) = (g.a(), g.b(), g.c());
        assert!(g.is_generating_pair(&a, &b));
        let ac = g.multiply(&a, &c);
        assert!(!g.is_generating_pair(&a, &ac));
        assert_eq!(closure(&g, &[a, ac]).len(), 9);
        assert_eq!(closure(&g, &[a, b]).len(), 27);
        // the criterion agrees with closure on every pair of (3,1,1)
        let all: Vec<_> = g.elements().collect();
        for u in &all {
            for v in all.iter().step_by(2) {
                let full = closure(&g, &[*u, *v]).len() as u64 == g.order();
                assert_eq!(g.is_generating_pair(u, v), full, "{u} / {v}");
            }
        }
        let g = h(7, 2, 1);
        let k = 3;
        let x = g.multiply(&g.b(), &g.power(&g.a(), k));
        let y = g.multiply(&g.a(), &g.power(&x, -k));
        assert!(g.is_generating_pair(&x, &y));
    }

    fn closure(g: &GroupParams, gens: &[GroupElement]) -> std::collections::BTreeSet<GroupElement> {
        let mut seen = std::collections::BTreeSet::from([g.identity()]);
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for s in gens {
                let y = g.multiply(&x, s);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn automorphism_from_images_examples() {
        let g = h(7, 2, 1);
        let id = GroupAutomorphism::from_images(g, g.a(), g.b()).unwrap();
        assert!(id.is_identity());
        for x in g.elements().step_by(11) {
            assert_eq!(id.apply(&x), x);
        }
        assert_eq!(GroupAutomorphism::from_images(g, g.a(), g.a()), Err(GroupError::NotGenerating));
        assert!(matches!(
            GroupAutomorphism::from_images(g, g.b(), g.a()),
            Err(GroupError::OrderMismatch { generator: 'a', expected: 49, found: 7 })
        ));
        // a -> a^-1, b -> a^-k b^-1 a^k
        for k in [3, 5] {
            let ak = g.power(&g.a(), k);
            let v = g.product([&g.inverse(&ak), &g.inverse(&g.b()), &ak]);
            assert!(GroupAutomorphism::from_images(g, g.inverse(&g.a()), v).is_ok());
        }
    }

    #[test]
    fn table_matches_apply() {
        let g = h(3, 2, 1);
        let phi = GroupAutomorphism::from_images(g, g.multiply(&g.a(), &g.b()), g.multiply(&g.b(), &g.c())).unwrap();
        let table = phi.table();
        for (i, x) in g.elements().enumerate() {
            assert_eq!(table[i], phi.apply(&x));
        }
    }

    #[test]
    fn twisting_automorphism_sends_bak_to_a_inverse() {
        let g = h(7, 2, 1);
        let k = 3i64;
        let (a, b) = (g.a(), g.b());
        let ak = g.power(&a, k);
        let x = g.product([&g.inverse(&a), &b, &ak]);
        let y = g.multiply(&g.inverse(&a), &g.power(&x, -k));
        let phi = GroupAutomorphism::from_images(g, x, y).unwrap();
        assert_eq!(phi.apply(&g.multiply(&b, &ak)), g.inverse(&a));
    }

    #[test]
    fn compose_and_inverse() {
        let g = h(5, 2, 1);
        let phi = GroupAutomorphism::from_images(g, g.multiply(&g.b(), &g.a()), g.power(&g.b(), 2)).unwrap();
        let psi = GroupAutomorphism::from_images(g, g.inverse(&g.a()), g.multiply(&g.b(), &g.c())).unwrap();
        let both = phi.compose(&psi);
        for x in g.elements().step_by(17) {
            assert_eq!(both.apply(&x), psi.apply(&phi.apply(&x)));
        }
        assert!(phi.compose(&phi.inverse()).is_identity());
        assert!(phi.inverse().compose(&phi).is_identity());
    }

    #[test]
    fn automorphisms_are_injective_on_small_group() {
        let g = h(3, 1, 1);
        let all: Vec<_> = g.elements().collect();
        let mut count = 0;
        for u in &all {
            for v in &all {
                let Ok(phi) = GroupAutomorphism::from_images(g, *u, *v) else { continue };
                count += 1;
                let mut images: Vec<_> = all.iter().map(|x| phi.apply(x)).collect();
                images.sort();
                images.dedup();
                assert_eq!(images.len(), all.len());
            }
        }
        // |Aut(H(3,1,1))| = |GL(2,3)| * |H/Z(H)| = 48 * 9
        assert_eq!(count, 432);
    }

    #[test]
    fn rank_round_trip() {
        let g = h(3, 2, 1);
        assert_eq!(g.rank(&g.identity()), 0);
        assert_eq!(g.rank(&g.c()), 1);
        assert_eq!(g.rank(&g.b()), 3);
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.rank(&x), i as u64);
            assert_eq!(g.unrank(i as u64).unwrap(), x);
        }
        assert!(matches!(g.unrank(81), Err(GroupError::IndexOutOfRange { index: 81, order: 81 })));
    }

    #[test]
    fn maximal_subgroups_have_index_p() {
        let g = h(3, 1, 1);
        let subs = g.maximal_subgroups();
        assert_eq!(subs.len(), 4);
        for m in &subs {
            let span = closure(&g, &m.generators);
            assert_eq!(span.len() as u64, m.order);
            assert_eq!(m.order * 3, g.order());
            assert!(g.elements().all(|x| m.contains(&x) == span.contains(&x)));
        }
        let g = h(3, 2, 1);
        let subs = g.maximal_subgroups();
        assert_eq!(subs.len(), 4);
        assert_eq!(subs[0].invariant_factors, vec![9, 3]);
        assert_eq!(subs[3].invariant_factors, vec![3, 3, 3]);
        let last = &subs[3];
        let members: Vec<_> = g.elements().filter(|x| last.contains(x)).collect();
        assert_eq!(members.len() as u64, last.order);
        for x in &members {
            for y in &members {
                assert_eq!(g.multiply(x, y), g.multiply(y, x));
            }
        }
    }

    #[test]
    fn parse_word_examples() {
        let g = h(3, 2, 1);
        let expected = g.multiply(&g.power(&g.a(), 2), &g.inverse(&g.b()));
        assert_eq!(g.parse_word("a^2*b^-1").unwrap(), expected);
        assert_eq!(g.parse_word("a^2 b^-1").unwrap(), expected);
        assert_eq!(g.parse_word("b*a").unwrap().triple(), (1, 1, 2));
        assert!(g.parse_word("a^9").unwrap().is_identity());
        assert_eq!(g.parse_word("  c ").unwrap(), g.c());
        assert_eq!(g.parse_word("a ^ 2").unwrap_err(), GroupError::Syntax {
            position: 2,
            message: "expected a generator, found '^'".into()
        });
        assert_eq!(g.parse_word("a*d").unwrap_err(), GroupError::UnknownGenerator { found: 'd', position: 2 });
        assert!(matches!(g.parse_word("a^"), Err(GroupError::Syntax { position: 2, .. })));
        assert!(matches!(g.parse_word(""), Err(GroupError::Syntax { .. })));
        assert!(matches!(g.parse_word("a*"), Err(GroupError::Syntax { .. })));
        assert!(matches!(g.parse_word("ab"), Err(GroupError::Syntax { position: 1, .. })));
    }

    #[test]
    fn display() {
        let g = h(3, 2, 1);
        assert_eq!(g.multiply(&g.a(), &g.b()).to_string(), "a^1 b^1 c^0");
        assert_eq!(serde_json::to_string(&g.element(4, 2, 1)).unwrap(), "[4,2,1]");
    }
}
