//! Independent check for the affine Cartan matrix: the group embeds into
//! SL2 over the Laurent polynomials F_q[z, z^{-1}], and edges of the tree
//! are recovered from a matrix by valuation reduction. Nothing here uses
//! the carry machinery, so agreement with `tree::act` is an end-to-end
//! test of the abstract side.

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqElem};
use crate::root_datum::{classify_root, epsilon_action, real_root_decomposition, reflect, EpsilonPair, Gcm, Root, RootClass};
use crate::tree::{Atom, Edge, GroupWord};

/// Laurent polynomial over F_q: coeffs[k] is the coefficient of z^{lo+k},
/// trimmed at both ends; zero is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPoly {
    pub lo: i64,
    pub coeffs: Vec<FqElem>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly {
            lo: 0,
            coeffs: vec![],
        }
    }

    pub fn constant(field: &Fq, c: &FqElem) -> LPoly {
        LPoly::monomial(field, c, 0)
    }

    pub fn one(field: &Fq) -> LPoly {
        LPoly::constant(field, &field.one())
    }

    pub fn monomial(field: &Fq, c: &FqElem, deg: i64) -> LPoly {
        if field.is_zero(c) {
            LPoly::zero()
        } else {
            LPoly {
                lo: deg,
                coeffs: vec![c.clone()],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// z-valuation; None for the zero polynomial.
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    fn trim(mut self, field: &Fq) -> LPoly {
        while self.coeffs.last().map_or(false, |c| field.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self
            .coeffs
            .iter()
            .take_while(|c| field.is_zero(c))
            .count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, field: &Fq, other: &LPoly) -> LPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![field.zero(); (hi - lo) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] = c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let idx = (other.lo - lo) as usize + k;
            coeffs[idx] = field.add(&coeffs[idx], c);
        }
        LPoly { lo, coeffs }.trim(field)
    }

    pub fn neg(&self, field: &Fq) -> LPoly {
        LPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: &Fq, other: &LPoly) -> LPoly {
        self.add(field, &other.neg(field))
    }

    pub fn mul(&self, field: &Fq, other: &LPoly) -> LPoly {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                coeffs[a + b] = field.add(&coeffs[a + b], &field.mul(ca, cb));
            }
        }
        LPoly {
            lo: self.lo + other.lo,
            coeffs,
        }
        .trim(field)
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> LPoly {
        if self.is_zero() {
            LPoly::zero()
        } else {
            LPoly {
                lo: self.lo + k,
                coeffs: self.coeffs.clone(),
            }
        }
    }
}

/// 2x2 matrix over the Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMatrix {
    pub m: [[LPoly; 2]; 2],
}

impl LMatrix {
    pub fn identity(field: &Fq) -> LMatrix {
        LMatrix {
            m: [
                [LPoly::one(field), LPoly::zero()],
                [LPoly::zero(), LPoly::one(field)],
            ],
        }
    }

    pub fn mul(&self, field: &Fq, other: &LMatrix) -> LMatrix {
        let mut out = [
            [LPoly::zero(), LPoly::zero()],
            [LPoly::zero(), LPoly::zero()],
        ];
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = LPoly::zero();
                for k in 0..2 {
                    acc = acc.add(field, &self.m[r][k].mul(field, &other.m[k][c]));
                }
                out[r][c] = acc;
            }
        }
        LMatrix { m: out }
    }

    pub fn det(&self, field: &Fq) -> LPoly {
        self.m[0][0]
            .mul(field, &self.m[1][1])
            .sub(field, &self.m[0][1].mul(field, &self.m[1][0]))
    }

    /// Inverse of a determinant-one matrix: the adjugate.
    pub fn inv_det_one(&self, field: &Fq) -> LMatrix {
        LMatrix {
            m: [
                [self.m[1][1].clone(), self.m[0][1].neg(field)],
                [self.m[1][0].neg(field), self.m[0][0].clone()],
            ],
        }
    }

    /// Minimal z-valuation over the four entries.
    pub fn minval(&self) -> i64 {
        self.m
            .iter()
            .flatten()
            .filter_map(|p| p.val())
            .min()
            .expect("nonzero matrix")
    }
}

fn require_affine(gcm: &Gcm) -> Result<()> {
    if gcm.a12 == -2 && gcm.a21 == -2 {
        Ok(())
    } else {
        Err(Error::NotAffineCartan)
    }
}

/// Positive side-1 roots are (k+1, k) and embed on the upper right at
/// degree k; positive side-2 roots are (k, k+1), lower left at degree
/// k+1. Pinnings for the remaining roots are *defined* by the conjugation
/// relation n_i x_g(e c) n_i^{-1} = x_{w_i g}(c), e = eps_{i,g}, so the
/// oracle and the abstract side share structure constants by
/// construction.
fn embed_atom(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    atom: &Atom,
) -> Result<LMatrix> {
    require_affine(gcm)?;
    let z = |deg: i64, c: &FqElem| LPoly::monomial(field, c, deg);
    let one = LPoly::one(field);
    match atom {
        Atom::N(i) => {
            // n_i = x_i(1) x_{-a_i}(1) x_i(1)
            let xi = embed_atom(gcm, field, eps, &Atom::X(Root::simple(*i), field.one()))?;
            let xni = embed_atom(gcm, field, eps, &Atom::X(Root::simple(*i).neg(), field.one()))?;
            Ok(xi.mul(field, &xni).mul(field, &xi))
        }
        Atom::H(h) => {
            // h_1(t1) h_2(t2) = diag(t1/t2, t2/t1)
            let a = field.mul(&h.t[0], &field.inv(&h.t[1]).expect("unit"));
            let b = field.inv(&a).expect("unit");
            Ok(LMatrix {
                m: [
                    [z(0, &a), LPoly::zero()],
                    [LPoly::zero(), z(0, &b)],
                ],
            })
        }
        Atom::X(r, c) => match (*r, classify_root(gcm, *r)) {
            (r, _) if r == Root::ALPHA1 => Ok(LMatrix {
                m: [[one.clone(), z(0, c)], [LPoly::zero(), one]],
            }),
            (r, _) if r == Root::ALPHA2 => Ok(LMatrix {
                m: [[one.clone(), LPoly::zero()], [z(1, c), one]],
            }),
            (r, _) if r == Root::ALPHA1.neg() => Ok(LMatrix {
                m: [[one.clone(), LPoly::zero()], [z(0, &field.neg(c)), one]],
            }),
            (r, _) if r == Root::ALPHA2.neg() => Ok(LMatrix {
                m: [[one.clone(), z(-1, &field.neg(c))], [LPoly::zero(), one]],
            }),
            (_, RootClass::NotReal) => Err(Error::NotRealRoot(r.k1, r.k2)),
            (r, class) => {
                // recurse through a descent of the positive version
                let pos = if class.is_positive() { r } else { r.neg() };
                let (word, _) = real_root_decomposition(gcm, pos)?;
                let i = word[0];
                let gamma = reflect(gcm, i, r);
                let sgn = epsilon_action(gcm, eps, i, gamma);
                let d = if sgn == 1 { c.clone() } else { field.neg(c) };
                let n = embed_atom(gcm, field, eps, &Atom::N(i))?;
                let inner = embed_atom(gcm, field, eps, &Atom::X(gamma, d))?;
                Ok(n.mul(field, &inner).mul(field, &n.inv_det_one(field)))
            }
        },
    }
}

pub fn embed_word(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    w: &GroupWord,
) -> Result<LMatrix> {
    let mut out = LMatrix::identity(field);
    for atom in &w.atoms {
        out = out.mul(field, &embed_atom(gcm, field, eps, atom)?);
    }
    Ok(out)
}

/// Matrix of the gallery word x_{i1}(t1) n_{i1} ... .
pub fn embed_edge(gcm: &Gcm, field: &Fq, eps: EpsilonPair, e: &Edge) -> Result<LMatrix> {
    let mut out = LMatrix::identity(field);
    for (i, t) in &e.gallery {
        out = out.mul(
            field,
            &embed_atom(gcm, field, eps, &Atom::X(Root::simple(*i), t.clone()))?,
        );
        out = out.mul(field, &embed_atom(gcm, field, eps, &Atom::N(*i))?);
    }
    Ok(out)
}

/// Gallery distance of the edge m.(base) from the base edge: half the sum
/// of the two lattice distances d([L0], m[L0]) and d([L1], m[L1]), each
/// read off from valuations since det m = 1.
fn gallery_distance(m: &LMatrix) -> i64 {
    let d0 = -2 * m.minval();
    let conj = LMatrix {
        m: [
            [m.m[0][0].clone(), m.m[0][1].shift(1)],
            [m.m[1][0].shift(-1), m.m[1][1].clone()],
        ],
    };
    let d1 = -2 * conj.minval();
    (d0 + d1) / 2
}

fn in_iwahori(_field: &Fq, m: &LMatrix) -> bool {
    m.m.iter().flatten().all(|p| p.val().map_or(true, |v| v >= 0))
        && m.m[1][0].val().map_or(true, |v| v >= 1)
}

/// Recover the gallery of the edge m.(base) by peeling letters: at each
/// step exactly one choice of (i, t) strictly decreases the gallery
/// distance, and the residue at distance zero must lie in the Iwahori
/// subgroup. Both uniqueness and the final membership are asserted.
pub fn oracle_edge(gcm: &Gcm, field: &Fq, eps: EpsilonPair, m: &LMatrix) -> Result<Edge> {
    require_affine(gcm)?;
    let det = m.det(field);
    if det != LPoly::one(field) {
        return Err(Error::DeterminantNotOne);
    }
    let mut cur = m.clone();
    let mut gallery = Vec::new();
    loop {
        let d = gallery_distance(&cur);
        if d == 0 {
            assert!(
                in_iwahori(field, &cur),
                "distance-zero residue must be Iwahori"
            );
            return Ok(Edge { gallery });
        }
        let mut found: Option<((u8, FqElem), LMatrix)> = None;
        for i in [1u8, 2u8] {
            if let Some((last, _)) = gallery.last() {
                if *last == i {
                    continue;
                }
            }
            for t in field.elements() {
                let letter = embed_atom(gcm, field, eps, &Atom::X(Root::simple(i), t.clone()))?
                    .mul(field, &embed_atom(gcm, field, eps, &Atom::N(i))?);
                let next = letter.inv_det_one(field).mul(field, &cur);
                if gallery_distance(&next) == d - 1 {
                    assert!(
                        found.is_none(),
                        "peeling step must be unique (determinant-one rigidity)"
                    );
                    found = Some(((i, t), next));
                }
            }
        }
        let ((i, t), next) = found.expect("some letter must decrease the distance");
        gallery.push((i, t));
        cur = next;
    }
}

/// Image of an edge under a word, computed entirely on the matrix side.
pub fn oracle_act(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    w: &GroupWord,
    e: &Edge,
) -> Result<Edge> {
    let g = embed_word(gcm, field, eps, w)?;
    let m = embed_edge(gcm, field, eps, e)?;
    oracle_edge(gcm, field, eps, &g.mul(field, &m))
}
