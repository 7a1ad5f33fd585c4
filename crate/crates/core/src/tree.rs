//! Action on the edge set of the tree. An edge is a gallery: a reduced
//! alternating word of letters (i, t) standing for x_{a_i}(t) n_i, with
//! the empty gallery naming the base edge fixed by B. Atoms act by
//! carrying a B-element down the gallery; the conjugation step has an
//! exact closed form, so no approximate rewriting is involved.

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqElem};
use crate::root_datum::{classify_root, epsilon_action, reflect, EpsilonPair, Gcm, Root, RootClass};
use crate::unipotent::{
    generator, retraction, u_mul, BElement, Syllable, TorusElem, UWord,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Atomic generator: a root-group element, a Weyl representative n_i, or
/// a torus element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Atom {
    X(Root, FqElem),
    N(u8),
    H(TorusElem),
}

/// A word in the atomic generators, leftmost factor acting last.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupWord {
    pub atoms: Vec<Atom>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { atoms: vec![] }
    }

    pub fn inverse(&self, field: &Fq) -> GroupWord {
        let mut atoms = Vec::new();
        for a in self.atoms.iter().rev() {
            match a {
                Atom::X(r, c) => atoms.push(Atom::X(*r, field.neg(c))),
                Atom::H(h) => atoms.push(Atom::H(h.inv(field))),
                // n_i^{-1} = h_i(-1) n_i
                Atom::N(i) => {
                    atoms.push(Atom::H(TorusElem::simple(
                        field,
                        *i,
                        &field.neg(&field.one()),
                    )));
                    atoms.push(Atom::N(*i));
                }
            }
        }
        GroupWord { atoms }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        GroupWord { atoms }
    }

    /// Render in the word grammar: `x(k1,k2;c) n(i) h(c1,c2)`.
    pub fn display(&self, field: &Fq) -> String {
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::X(r, c) => {
                    format!("x({},{};{})", r.k1, r.k2, field.to_string_elem(c))
                }
                Atom::N(i) => format!("n({i})"),
                Atom::H(h) => format!(
                    "h({},{})",
                    field.to_string_elem(&h.t[0]),
                    field.to_string_elem(&h.t[1])
                ),
            })
            .collect();
        parts.join(" ")
    }
}

/// Parse the word grammar; whitespace-separated atoms.
pub fn parse_word(field: &Fq, s: &str) -> Result<GroupWord> {
    let mut atoms = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || Error::Parse(format!("bad atom {tok:?}"));
        let (head, rest) = tok.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        match head {
            "x" => {
                let (ks, cs) = inner.split_once(';').ok_or_else(bad)?;
                let (k1, k2) = ks.split_once(',').ok_or_else(bad)?;
                let k1: i64 = k1.trim().parse().map_err(|_| bad())?;
                let k2: i64 = k2.trim().parse().map_err(|_| bad())?;
                let c = field.parse_elem(cs.trim())?;
                atoms.push(Atom::X(Root::new(k1, k2), c));
            }
            "n" => {
                let i: u8 = inner.trim().parse().map_err(|_| bad())?;
                if i != 1 && i != 2 {
                    return Err(bad());
                }
                atoms.push(Atom::N(i));
            }
            "h" => {
                let (c1, c2) = inner.split_once(',').ok_or_else(bad)?;
                let t1 = field.parse_elem(c1.trim())?;
                let t2 = field.parse_elem(c2.trim())?;
                atoms.push(Atom::H(TorusElem::new(field, t1, t2)?));
            }
            _ => return Err(bad()),
        }
    }
    Ok(GroupWord { atoms })
}

/// An edge of the tree, as the gallery from the base edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub gallery: Vec<(u8, FqElem)>,
}

impl Edge {
    pub fn base() -> Edge {
        Edge { gallery: vec![] }
    }

    pub fn len(&self) -> usize {
        self.gallery.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gallery.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.gallery.iter().all(|(i, _)| *i == 1 || *i == 2)
            && self.gallery.windows(2).all(|w| w[0].0 != w[1].0)
    }

    pub fn display(&self, field: &Fq) -> String {
        if self.gallery.is_empty() {
            return "base".to_string();
        }
        self.gallery
            .iter()
            .map(|(i, t)| format!("{i}:{}", field.to_string_elem(t)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(field: &Fq, s: &str) -> Result<Edge> {
        let s = s.trim();
        if s.is_empty() || s == "base" {
            return Ok(Edge::base());
        }
        let mut gallery = Vec::new();
        for seg in s.split(',') {
            let (i, t) = seg
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad edge segment {seg:?}")))?;
            let i: u8 = i
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge type in {seg:?}")))?;
            if i != 1 && i != 2 {
                return Err(Error::Parse(format!("edge type must be 1 or 2 in {seg:?}")));
            }
            gallery.push((i, field.parse_elem(t.trim())?));
        }
        let e = Edge { gallery };
        if !e.is_valid() {
            return Err(Error::Parse("gallery types must alternate".into()));
        }
        Ok(e)
    }
}

/// Work counter shared across one action; exceeding the limit aborts with
/// an error rather than returning anything approximate.
#[derive(Debug, Clone)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            Err(Error::NormalizationBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 100_000;

/// <lambda, alpha_i^vee> = k1 a_{i1} + k2 a_{i2}.
fn char_exp(gcm: &Gcm, i: u8, lambda: Root) -> i64 {
    lambda.k1 * gcm.entry(i, 1) + lambda.k2 * gcm.entry(i, 2)
}

/// Sign of n_i^{-1} x_gamma(d) n_i = x_{w_i gamma}(e~ d): conjugating by
/// n_i^{-1} = h_i(-1) n_i twists the forward sign by (w_i gamma)(h_i(-1)).
fn eps_inv(gcm: &Gcm, eps: EpsilonPair, i: u8, gamma: Root) -> i8 {
    let fwd = epsilon_action(gcm, eps, i, gamma);
    let tw = if char_exp(gcm, i, reflect(gcm, i, gamma)) % 2 == 0 {
        1
    } else {
        -1
    };
    fwd * tw
}

fn apply_sign(field: &Fq, sgn: i8, c: &FqElem) -> FqElem {
    if sgn == 1 {
        c.clone()
    } else {
        field.neg(c)
    }
}

/// n_i^{-1} u n_i for u in the kernel of the retraction ret_i, returned in
/// free-product normal form. Splitting u into pieces x_i(A) y x_i(-A) with
/// y free of alpha_i, each piece conjugates in closed form:
///   - y on side i: the images w_i(gamma) lie on the other side and
///     commute with x_{-a_i}, so the offset A drops out;
///   - y on side j, offset A != 0: using x_{-a_i}(A) =
///     x_i(-1/A) h_i(1/A) n_i x_i(-1/A) and a second n_i-conjugation, the
///     piece becomes x_i(-1/A) y' x_i(1/A) with y' back on side j.
fn conj_n_inv_ker(gcm: &Gcm, field: &Fq, eps: EpsilonPair, i: u8, u: &UWord) -> UWord {
    let alpha_i = Root::simple(i);
    let mut offset = field.zero();
    let mut out = UWord::identity();
    for syl in &u.syllables {
        if syl.side == i {
            if let Some(a) = syl.coords.get(&alpha_i) {
                offset = field.add(&offset, a);
            }
            let mut coords = BTreeMap::new();
            for (g, d) in &syl.coords {
                if *g == alpha_i {
                    continue;
                }
                let img = reflect(gcm, i, *g);
                coords.insert(img, apply_sign(field, eps_inv(gcm, eps, i, *g), d));
            }
            if !coords.is_empty() {
                let piece = UWord {
                    syllables: vec![Syllable {
                        side: 3 - i,
                        coords,
                    }],
                };
                out = u_mul(field, &out, &piece);
            }
        } else if field.is_zero(&offset) {
            let mut coords = BTreeMap::new();
            for (g, d) in &syl.coords {
                let img = reflect(gcm, i, *g);
                coords.insert(img, apply_sign(field, eps_inv(gcm, eps, i, *g), d));
            }
            let piece = UWord {
                syllables: vec![Syllable { side: i, coords }],
            };
            out = u_mul(field, &out, &piece);
        } else {
            // triple form: x_i(-1/A) y' x_i(1/A), with each gamma-coordinate
            // scaled by eps~_{i,gamma} eps_{i,w_i gamma} gamma(h_i(1/A))
            let ainv = field.inv(&offset).expect("nonzero offset");
            let mut coords = BTreeMap::new();
            for (g, d) in &syl.coords {
                let mu = reflect(gcm, i, *g);
                let mut c = apply_sign(field, eps_inv(gcm, eps, i, *g), d);
                c = apply_sign(field, epsilon_action(gcm, eps, i, mu), &c);
                let scale = field
                    .powi(&ainv, char_exp(gcm, i, *g))
                    .expect("unit base");
                coords.insert(*g, field.mul(&scale, &c));
            }
            let xi = |v: &FqElem| -> UWord {
                generator(gcm, field, alpha_i, v).expect("simple root")
            };
            let mid = UWord {
                syllables: vec![Syllable {
                    side: 3 - i,
                    coords,
                }],
            };
            let piece = u_mul(field, &u_mul(field, &xi(&field.neg(&ainv)), &mid), &xi(&ainv));
            out = u_mul(field, &out, &piece);
        }
    }
    debug_assert!(field.is_zero(&offset), "argument must lie in ker ret_i");
    out
}

/// Push b = u h leftwards through one gallery letter:
/// b x_i(t) n_i = x_i(t') n_i b' with t' = ret_i(u x_i(a_i(h) t)) and
/// b' = n_i^{-1} x_i(-t') u x_i(a_i(h) t) n_i . w_i(h).
pub fn carry(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    b: &BElement,
    letter: &(u8, FqElem),
    budget: &mut Budget,
) -> Result<((u8, FqElem), BElement)> {
    budget.charge(1 + b.u.len() as u64)?;
    let (i, t) = letter;
    let alpha_i = Root::simple(*i);
    let s = field.mul(&b.h.eval(gcm, field, alpha_i), t);
    let v = u_mul(field, &b.u, &generator(gcm, field, alpha_i, &s)?);
    let tp = retraction(field, &v, *i);
    let u_ker = u_mul(
        field,
        &generator(gcm, field, alpha_i, &field.neg(&tp))?,
        &v,
    );
    let u2 = conj_n_inv_ker(gcm, field, eps, *i, &u_ker);
    Ok((
        (*i, tp),
        BElement {
            u: u2,
            h: b.h.weyl(gcm, field, *i),
        },
    ))
}

fn apply_b(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    b: &BElement,
    gallery: &[(u8, FqElem)],
    budget: &mut Budget,
) -> Result<Vec<(u8, FqElem)>> {
    let mut cur = b.clone();
    let mut out = Vec::with_capacity(gallery.len());
    for letter in gallery {
        let (l, next) = carry(gcm, field, eps, &cur, letter, budget)?;
        out.push(l);
        cur = next;
    }
    Ok(out)
}

/// Expand a negative root-group atom into positive atoms, Weyl
/// representatives and torus factors, by strict descent on the height:
///   x_{-a_i}(v) = x_i(-1/v) h_i(1/v) n_i x_i(-1/v),
///   x_{-b}(c)   = n_i x_{-w_i b}(e c) n_i h_i(-1)  at a descent letter i.
fn expand_negative(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    beta: Root,
    c: &FqElem,
    budget: &mut Budget,
) -> Result<Vec<Atom>> {
    budget.charge(1)?;
    if field.is_zero(c) {
        return Ok(vec![]);
    }
    let pos = beta.neg();
    if pos == Root::ALPHA1 || pos == Root::ALPHA2 {
        let i = if pos == Root::ALPHA1 { 1 } else { 2 };
        let vinv = field.inv(c).expect("nonzero");
        return Ok(vec![
            Atom::X(pos, field.neg(&vinv)),
            Atom::H(TorusElem::simple(field, i, &vinv)),
            Atom::N(i),
            Atom::X(pos, field.neg(&vinv)),
        ]);
    }
    let (word, _) = crate::root_datum::real_root_decomposition(gcm, pos)?;
    let i = word[0];
    let gamma = reflect(gcm, i, beta); // negative, strictly smaller height
    let sgn = epsilon_action(gcm, eps, i, gamma);
    let mut atoms = vec![Atom::N(i)];
    atoms.extend(expand_negative(
        gcm,
        field,
        eps,
        gamma,
        &apply_sign(field, sgn, c),
        budget,
    )?);
    atoms.push(Atom::N(i));
    atoms.push(Atom::H(TorusElem::simple(
        field,
        i,
        &field.neg(&field.one()),
    )));
    Ok(atoms)
}

fn apply_atom(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    atom: &Atom,
    e: &Edge,
    budget: &mut Budget,
) -> Result<Edge> {
    match atom {
        Atom::H(h) => {
            let b = BElement {
                u: UWord::identity(),
                h: h.clone(),
            };
            Ok(Edge {
                gallery: apply_b(gcm, field, eps, &b, &e.gallery, budget)?,
            })
        }
        Atom::X(r, c) => match classify_root(gcm, *r) {
            RootClass::Pos1 | RootClass::Pos2 => {
                let b = BElement {
                    u: generator(gcm, field, *r, c)?,
                    h: TorusElem::identity(field),
                };
                Ok(Edge {
                    gallery: apply_b(gcm, field, eps, &b, &e.gallery, budget)?,
                })
            }
            RootClass::Neg1 | RootClass::Neg2 => {
                let atoms = expand_negative(gcm, field, eps, *r, c, budget)?;
                let mut cur = e.clone();
                for a in atoms.iter().rev() {
                    cur = apply_atom(gcm, field, eps, a, &cur, budget)?;
                }
                Ok(cur)
            }
            RootClass::NotReal => Err(Error::NotRealRoot(r.k1, r.k2)),
        },
        Atom::N(i) => {
            budget.charge(1)?;
            match e.gallery.split_first() {
                None => Ok(Edge {
                    gallery: vec![(*i, field.zero())],
                }),
                Some(((i1, t1), rest)) => {
                    if i != i1 {
                        let mut gallery = vec![(*i, field.zero())];
                        gallery.extend(e.gallery.iter().cloned());
                        Ok(Edge { gallery })
                    } else if field.is_zero(t1) {
                        // n_i^2 = h_i(-1)
                        let b = BElement {
                            u: UWord::identity(),
                            h: TorusElem::simple(field, *i, &field.neg(&field.one())),
                        };
                        Ok(Edge {
                            gallery: apply_b(gcm, field, eps, &b, rest, budget)?,
                        })
                    } else {
                        // n_i x_i(t) n_i = x_i(-1/t) n_i . x_i(-t) h_i(-t)
                        let tinv = field.inv(t1).expect("nonzero");
                        let b = BElement {
                            u: generator(gcm, field, Root::simple(*i), &field.neg(t1))?,
                            h: TorusElem::simple(field, *i, &field.neg(t1)),
                        };
                        let mut gallery = vec![(*i, field.neg(&tinv))];
                        gallery.extend(apply_b(gcm, field, eps, &b, rest, budget)?);
                        Ok(Edge { gallery })
                    }
                }
            }
        }
    }
}

/// Apply a word of atoms to an edge, rightmost atom first. Returns the
/// image edge and the work spent.
pub fn act(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    w: &GroupWord,
    e: &Edge,
    budget_limit: u64,
) -> Result<(Edge, u64)> {
    if !e.is_valid() {
        return Err(Error::Parse("invalid gallery".into()));
    }
    let mut budget = Budget::new(budget_limit);
    let mut cur = e.clone();
    for atom in w.atoms.iter().rev() {
        cur = apply_atom(gcm, field, eps, atom, &cur, &mut budget)?;
    }
    Ok((cur, budget.used))
}

/// A point of the star at the type-i base vertex: the base edge itself
/// (infinity) or the edge [(i, c)].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProjPoint {
    Infinity,
    Finite(FqElem),
}

/// Action of one atom of the standard parabolic P_i on the star at the
/// type-i base vertex.
pub fn local_action(
    gcm: &Gcm,
    field: &Fq,
    atom: &Atom,
    i: u8,
    p: &ProjPoint,
) -> Result<ProjPoint> {
    match atom {
        Atom::X(r, c) => {
            match classify_root(gcm, *r) {
                RootClass::Pos1 | RootClass::Pos2 => {}
                _ => {
                    return Err(Error::AtomNotInParabolic(format!(
                        "x at non-positive root {r}"
                    )))
                }
            }
            Ok(match p {
                ProjPoint::Infinity => ProjPoint::Infinity,
                ProjPoint::Finite(v) => {
                    if *r == Root::simple(i) {
                        ProjPoint::Finite(field.add(v, c))
                    } else {
                        ProjPoint::Finite(v.clone())
                    }
                }
            })
        }
        Atom::H(h) => Ok(match p {
            ProjPoint::Infinity => ProjPoint::Infinity,
            ProjPoint::Finite(v) => {
                ProjPoint::Finite(field.mul(&h.eval(gcm, field, Root::simple(i)), v))
            }
        }),
        Atom::N(j) => {
            if *j != i {
                return Err(Error::AtomNotInParabolic(format!(
                    "n({j}) does not stabilize the type-{i} vertex"
                )));
            }
            Ok(match p {
                ProjPoint::Infinity => ProjPoint::Finite(field.zero()),
                ProjPoint::Finite(v) => {
                    if field.is_zero(v) {
                        ProjPoint::Infinity
                    } else {
                        ProjPoint::Finite(field.neg(&field.inv(v).expect("nonzero")))
                    }
                }
            })
        }
    }
}

/// All edges at gallery distance <= radius from the base edge;
/// 1 + 2q + ... + 2q^R of them.
pub fn ball(field: &Fq, radius: u32) -> Vec<Edge> {
    let mut out = vec![Edge::base()];
    let mut frontier = vec![Edge::base()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            let types: Vec<u8> = match e.gallery.last() {
                None => vec![1, 2],
                Some((i, _)) => vec![3 - i],
            };
            for ty in types {
                for t in field.elements() {
                    let mut gallery = e.gallery.clone();
                    gallery.push((ty, t.clone()));
                    next.push(Edge { gallery });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Canonical name of a vertex of an edge: the shortest gallery containing
/// it. The type-j endpoint of a gallery whose last letter has type j is
/// shared with the parent edge.
pub fn canon_vertex(e: &Edge, ty: u8) -> (Edge, u8) {
    match e.gallery.last() {
        Some((i, _)) if *i == ty => {
            let mut g = e.gallery.clone();
            g.pop();
            (Edge { gallery: g }, ty)
        }
        _ => (e.clone(), ty),
    }
}

/// Orbits and stabilizer orders of the subgroup generated by `gens` on the
/// edges and vertices of ball(radius), enumerated through words of length
/// at most `max_len`. The enumeration identifies two elements when they
/// agree on every ball edge; `truncated` reports whether longer words were
/// still producing new actions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitReport {
    pub num_elements: usize,
    pub truncated: bool,
    pub edge_orbits: Vec<Vec<String>>,
    pub edge_stabilizer_orders: Vec<u64>,
    pub vertex_orbits: Vec<Vec<String>>,
    pub vertex_stabilizer_orders: Vec<u64>,
}

pub fn orbit_and_stabilizers(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    gens: &[GroupWord],
    radius: u32,
    max_len: usize,
    budget_limit: u64,
) -> Result<OrbitReport> {
    let edges = ball(field, radius);
    let key = |e: &Edge| e.display(field);
    let edge_index: BTreeMap<String, usize> = edges
        .iter()
        .enumerate()
        .map(|(k, e)| (key(e), k))
        .collect();

    let mut step_gens: Vec<GroupWord> = Vec::new();
    for g in gens {
        step_gens.push(g.clone());
        step_gens.push(g.inverse(field));
    }

    // action vector of a word on the ball edges
    let vector = |w: &GroupWord| -> Result<Vec<Edge>> {
        edges
            .iter()
            .map(|e| act(gcm, field, eps, w, e, budget_limit).map(|(img, _)| img))
            .collect()
    };

    let mut seen: BTreeMap<Vec<Edge>, GroupWord> = BTreeMap::new();
    let id_vec = vector(&GroupWord::identity())?;
    seen.insert(id_vec.clone(), GroupWord::identity());
    let mut frontier = vec![GroupWord::identity()];
    let mut truncated = false;
    for depth in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &step_gens {
                let nw = g.concat(w);
                let v = vector(&nw)?;
                if !seen.contains_key(&v) {
                    seen.insert(v, nw.clone());
                    next.push(nw);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if depth + 1 == max_len {
            // check whether one more level would grow the action set
            for w in &next {
                for g in &step_gens {
                    let nw = g.concat(w);
                    if !seen.contains_key(&vector(&nw)?) {
                        truncated = true;
                        break;
                    }
                }
                if truncated {
                    break;
                }
            }
        }
        frontier = next;
    }

    let vectors: Vec<&Vec<Edge>> = seen.keys().collect();
    let num_elements = vectors.len();

    // edge orbits within the ball, by union-find
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in &vectors {
        for (idx, img) in v.iter().enumerate() {
            if let Some(&j) = edge_index.get(&key(img)) {
                let (a, b) = (find(&mut parent, idx), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut edge_orbit_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for idx in 0..edges.len() {
        let r = find(&mut parent, idx);
        edge_orbit_map.entry(r).or_default().push(idx);
    }
    let mut edge_orbits = Vec::new();
    let mut edge_stabilizer_orders = Vec::new();
    for members in edge_orbit_map.values() {
        let rep = members[0];
        let stab = vectors
            .iter()
            .filter(|v| v[rep] == edges[rep])
            .count() as u64;
        edge_orbits.push(members.iter().map(|&m| key(&edges[m])).collect());
        edge_stabilizer_orders.push(stab);
    }

    // vertices of the ball, with the induced action
    let mut vkey_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut vertices: Vec<(Edge, u8)> = Vec::new();
    let vname = |v: &(Edge, u8)| format!("{}@{}", v.1, v.0.display(field));
    for e in &edges {
        for ty in [1u8, 2u8] {
            let v = canon_vertex(e, ty);
            if !vkey_index.contains_key(&vname(&v)) {
                vkey_index.insert(vname(&v), vertices.len());
                vertices.push(v);
            }
        }
    }
    // image of vertex k under element vector v
    let vimage = |v: &Vec<Edge>, k: usize| -> Option<(Edge, u8)> {
        let (e, ty) = &vertices[k];
        edge_index
            .get(&key(e))
            .map(|&ei| canon_vertex(&v[ei], *ty))
    };
    let mut vparent: Vec<usize> = (0..vertices.len()).collect();
    for v in &vectors {
        for k in 0..vertices.len() {
            if let Some(img) = vimage(v, k) {
                if let Some(&j) = vkey_index.get(&vname(&img)) {
                    let (a, b) = (find(&mut vparent, k), find(&mut vparent, j));
                    if a != b {
                        vparent[a] = b;
                    }
                }
            }
        }
    }
    let mut vorbit_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..vertices.len() {
        let r = find(&mut vparent, k);
        vorbit_map.entry(r).or_default().push(k);
    }
    let mut vertex_orbits = Vec::new();
    let mut vertex_stabilizer_orders = Vec::new();
    for members in vorbit_map.values() {
        let rep = members[0];
        let stab = vectors
            .iter()
            .filter(|v| vimage(v, rep).as_ref() == Some(&vertices[rep]))
            .count() as u64;
        vertex_orbits.push(members.iter().map(|&m| vname(&vertices[m])).collect());
        vertex_stabilizer_orders.push(stab);
    }

    Ok(OrbitReport {
        num_elements,
        truncated,
        edge_orbits,
        edge_stabilizer_orders,
        vertex_orbits,
        vertex_stabilizer_orders,
    })
}
