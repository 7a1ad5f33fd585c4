//! Normal forms in the free product U_1 * U_2 of the two positive
//! unipotent families. Each factor is the direct sum of the root groups of
//! one family, recorded as a sparse coordinate map; a word is an
//! alternating sequence of nonempty syllables, which is the unique normal
//! form in the free product.

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqElem};
use crate::root_datum::{classify_root, epsilon_action, reflect, EpsilonPair, Gcm, Root, RootClass};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One syllable: a nontrivial element of the factor U_side, as a sparse
/// map from positive side-roots to nonzero field coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syllable {
    pub side: u8,
    pub coords: BTreeMap<Root, FqElem>,
}

impl Syllable {
    pub fn is_trivial(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Reduced word in U_1 * U_2: syllables alternate sides and are nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UWord {
    pub syllables: Vec<Syllable>,
}

impl UWord {
    pub fn identity() -> Self {
        UWord { syllables: vec![] }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Check the alternation/nonemptiness invariant.
    pub fn is_reduced(&self) -> bool {
        self.syllables.iter().all(|s| !s.is_trivial())
            && self.syllables.windows(2).all(|w| w[0].side != w[1].side)
    }
}

/// The side of the family a positive real root belongs to, or an error
/// for anything else.
pub fn root_side(gcm: &Gcm, r: Root) -> Result<u8> {
    match classify_root(gcm, r) {
        RootClass::Pos1 => Ok(1),
        RootClass::Pos2 => Ok(2),
        _ => Err(Error::NotRealRoot(r.k1, r.k2)),
    }
}

/// A single root-group generator x_alpha(c) as a word (identity if c = 0).
pub fn generator(gcm: &Gcm, field: &Fq, alpha: Root, c: &FqElem) -> Result<UWord> {
    let side = root_side(gcm, alpha)?;
    if field.is_zero(c) {
        return Ok(UWord::identity());
    }
    let mut coords = BTreeMap::new();
    coords.insert(alpha, c.clone());
    Ok(UWord {
        syllables: vec![Syllable { side, coords }],
    })
}

fn merge_syllables(field: &Fq, a: &Syllable, b: &Syllable) -> Syllable {
    debug_assert_eq!(a.side, b.side);
    let mut coords = a.coords.clone();
    for (r, c) in &b.coords {
        let entry = coords.entry(*r).or_insert_with(|| field.zero());
        *entry = field.add(entry, c);
        if field.is_zero(entry) {
            coords.remove(r);
        }
    }
    Syllable {
        side: a.side,
        coords,
    }
}

/// Product of two reduced words, re-reduced at the seam. Cancellation can
/// cascade inward when a merged syllable vanishes.
pub fn u_mul(field: &Fq, a: &UWord, b: &UWord) -> UWord {
    let mut left: Vec<Syllable> = a.syllables.clone();
    let mut right: std::collections::VecDeque<Syllable> = b.syllables.iter().cloned().collect();
    while let Some(front) = right.front() {
        match left.last() {
            Some(last) if last.side == front.side => {
                let merged = merge_syllables(field, last, front);
                left.pop();
                right.pop_front();
                if !merged.is_trivial() {
                    right.push_front(merged);
                }
            }
            _ => {
                left.push(right.pop_front().unwrap());
            }
        }
    }
    UWord { syllables: left }
}

/// Inverse of a reduced word (each factor is abelian, so a syllable
/// inverts coordinatewise).
pub fn u_inv(field: &Fq, a: &UWord) -> UWord {
    let syllables = a
        .syllables
        .iter()
        .rev()
        .map(|s| Syllable {
            side: s.side,
            coords: s
                .coords
                .iter()
                .map(|(r, c)| (*r, field.neg(c)))
                .collect(),
        })
        .collect();
    UWord { syllables }
}

/// Torsion classification of an element of the free product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorsionClass {
    Identity,
    /// w = conjugator * core * conjugator^{-1} with core in one factor;
    /// factors are elementary abelian, so the order is exactly p.
    Torsion {
        order: u64,
        conjugator: UWord,
        core: Syllable,
    },
    InfiniteOrder,
}

/// Cyclic reduction decides torsion: a free-product element has finite
/// order iff it is conjugate into a factor, i.e. its cyclic reduction has
/// at most one syllable.
pub fn torsion_class(field: &Fq, w: &UWord) -> TorsionClass {
    let mut syl = w.syllables.clone();
    let mut conj = UWord::identity();
    loop {
        if syl.len() < 2 {
            break;
        }
        if syl.first().unwrap().side != syl.last().unwrap().side {
            break;
        }
        // w = f  M  l with f, l on the same side, so
        // f^{-1} w f = M (l*f), shrinking the cyclic length.
        let last = syl.pop().unwrap();
        let first = syl.remove(0);
        conj = u_mul(
            field,
            &conj,
            &UWord {
                syllables: vec![first.clone()],
            },
        );
        let merged = merge_syllables(field, &last, &first);
        if !merged.is_trivial() {
            syl.push(merged);
        }
    }
    match syl.len() {
        0 => TorsionClass::Identity,
        1 => TorsionClass::Torsion {
            order: field.p(),
            conjugator: conj,
            core: syl.into_iter().next().unwrap(),
        },
        _ => TorsionClass::InfiniteOrder,
    }
}

/// Torus element h_1(t1) h_2(t2) of the simply connected datum; both
/// coordinates nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusElem {
    pub t: [FqElem; 2],
}

impl TorusElem {
    pub fn identity(field: &Fq) -> TorusElem {
        TorusElem {
            t: [field.one(), field.one()],
        }
    }

    /// h_i(t), t != 0.
    pub fn simple(field: &Fq, i: u8, t: &FqElem) -> TorusElem {
        assert!(!field.is_zero(t), "torus coordinates must be nonzero");
        let mut h = TorusElem::identity(field);
        h.t[(i - 1) as usize] = t.clone();
        h
    }

    pub fn new(field: &Fq, t1: FqElem, t2: FqElem) -> crate::error::Result<TorusElem> {
        if field.is_zero(&t1) || field.is_zero(&t2) {
            return Err(crate::error::Error::Parse(
                "torus coordinates must be nonzero".into(),
            ));
        }
        Ok(TorusElem { t: [t1, t2] })
    }

    pub fn is_identity(&self, field: &Fq) -> bool {
        self.t[0] == field.one() && self.t[1] == field.one()
    }

    pub fn mul(&self, field: &Fq, other: &TorusElem) -> TorusElem {
        TorusElem {
            t: [
                field.mul(&self.t[0], &other.t[0]),
                field.mul(&self.t[1], &other.t[1]),
            ],
        }
    }

    pub fn inv(&self, field: &Fq) -> TorusElem {
        TorusElem {
            t: [
                field.inv(&self.t[0]).expect("nonzero"),
                field.inv(&self.t[1]).expect("nonzero"),
            ],
        }
    }

    /// Character value lambda(h) for a root lambda = k1 a1 + k2 a2:
    /// lambda(h_s(t)) = t^{<lambda, alpha_s^vee>} with
    /// <alpha_r, alpha_s^vee> = a_sr.
    pub fn eval(&self, gcm: &Gcm, field: &Fq, lambda: Root) -> FqElem {
        let mut out = field.one();
        for s in [1u8, 2u8] {
            let e = lambda.k1 * gcm.entry(s, 1) + lambda.k2 * gcm.entry(s, 2);
            let v = field
                .powi(&self.t[(s - 1) as usize], e)
                .expect("torus coordinates are units");
            out = field.mul(&out, &v);
        }
        out
    }

    /// Conjugation by the Weyl representative: n_i h n_i^{-1} acts on the
    /// coroot lattice by w_i(y) = y - alpha_i(y) alpha_i^vee, which in
    /// coordinates sends h_j(t) to h_j(t) h_i(t^{-a_ji}).
    pub fn weyl(&self, gcm: &Gcm, field: &Fq, i: u8) -> TorusElem {
        let idx = (i - 1) as usize;
        let mut out = self.clone();
        let mut extra = field.one();
        for j in [1u8, 2u8] {
            let v = field
                .powi(&self.t[(j - 1) as usize], -gcm.entry(j, i))
                .expect("unit");
            extra = field.mul(&extra, &v);
        }
        out.t[idx] = field.mul(&out.t[idx], &extra);
        out
    }
}

/// An element of B = U x| H in its unique factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BElement {
    pub u: UWord,
    pub h: TorusElem,
}

impl BElement {
    pub fn identity(field: &Fq) -> BElement {
        BElement {
            u: UWord::identity(),
            h: TorusElem::identity(field),
        }
    }

    /// Product in B: (u1 h1)(u2 h2) = u1 (h1 u2 h1^{-1}) h1 h2.
    pub fn mul(&self, gcm: &Gcm, field: &Fq, other: &BElement) -> BElement {
        let conj = conj_by_torus(gcm, field, &self.h, &other.u);
        BElement {
            u: u_mul(field, &self.u, &conj),
            h: self.h.mul(field, &other.h),
        }
    }
}

/// h u h^{-1}: each root coordinate scales by the character alpha(h);
/// syllable shape is unchanged.
pub fn conj_by_torus(gcm: &Gcm, field: &Fq, h: &TorusElem, x: &UWord) -> UWord {
    let syllables = x
        .syllables
        .iter()
        .map(|s| Syllable {
            side: s.side,
            coords: s
                .coords
                .iter()
                .map(|(r, c)| (*r, field.mul(&h.eval(gcm, field, *r), c)))
                .collect(),
        })
        .collect();
    UWord { syllables }
}

/// n_i x n_i^{-1} when no syllable carries an alpha_i-coordinate: every
/// root maps to the positive root w_i(alpha) with sign epsilon_{i,alpha};
/// returns None (caller falls back to the SL2-level engine) otherwise.
pub fn conj_by_n(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    i: u8,
    x: &UWord,
) -> Option<UWord> {
    let alpha_i = Root::simple(i);
    if x.syllables.iter().any(|s| s.coords.contains_key(&alpha_i)) {
        return None;
    }
    let mut out = UWord::identity();
    for s in &x.syllables {
        let mut coords = BTreeMap::new();
        let mut side = 0u8;
        for (r, c) in &s.coords {
            let image = reflect(gcm, i, *r);
            let sgn = epsilon_action(gcm, eps, i, *r);
            let val = if sgn == 1 { c.clone() } else { field.neg(c) };
            side = root_side(gcm, image).expect("w_i image of a positive non-alpha_i root is positive");
            coords.insert(image, val);
        }
        out = u_mul(
            field,
            &out,
            &UWord {
                syllables: vec![Syllable { side, coords }],
            },
        );
    }
    Some(out)
}

/// Retraction onto the simple coordinate: the sum over side-i syllables of
/// the alpha_i-coordinate. This is the group retraction U_1 * U_2 -> F_q
/// induced by killing every root group except x_{alpha_i}.
pub fn retraction(field: &Fq, w: &UWord, i: u8) -> FqElem {
    let alpha = Root::simple(i);
    let mut acc = field.zero();
    for s in &w.syllables {
        if s.side != i {
            continue;
        }
        if let Some(c) = s.coords.get(&alpha) {
            acc = field.add(&acc, c);
        }
    }
    acc
}
