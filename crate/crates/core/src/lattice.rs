//! Covolume bookkeeping for edge-transitive lattices given by finite
//! group data, the admissibility screen, and the order of the center of
//! the ambient group over F_q.

use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::root_datum::{EpsilonPair, Gcm, Root};
use crate::tree::{orbit_and_stabilizers, GroupWord};
use crate::unipotent::TorusElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A finite group as a multiplication table; table[a][b] is the product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroupTable {
    pub fn new(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::NotAGroup("table is not square over 0..n".into()));
            }
        }
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|a| table[e][a] == a && table[a][e] == a) {
                identity = Some(e);
                break;
            }
        }
        let identity = identity.ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|k| format!("g{k}")).collect());
        if labels.len() != n {
            return Err(Error::NotAGroup("label count mismatch".into()));
        }
        Ok(FiniteGroupTable {
            labels,
            table,
            identity,
        })
    }

    pub fn cyclic(n: usize) -> FiniteGroupTable {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable::new(table, None).expect("cyclic group")
    }

    pub fn trivial() -> FiniteGroupTable {
        FiniteGroupTable::cyclic(1)
    }

    pub fn order(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Witness of p-torsion: some element whose order p divides, or None.
    /// By Cauchy's theorem this is empty exactly when p does not divide
    /// the group order.
    pub fn p_torsion_witness(&self, p: u64) -> Option<usize> {
        (0..self.table.len()).find(|&a| self.element_order(a) % p == 0)
    }
}

/// Graph-of-groups data for an edge of groups: two vertex groups and an
/// edge group with injections into both.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphOfGroupsLattice {
    pub a: FiniteGroupTable,
    pub b: FiniteGroupTable,
    pub c: FiniteGroupTable,
    pub into_a: Vec<usize>,
    pub into_b: Vec<usize>,
}

fn check_injection(
    c: &FiniteGroupTable,
    g: &FiniteGroupTable,
    map: &Vec<usize>,
    name: &str,
) -> Result<()> {
    let nc = c.table.len();
    let ng = g.table.len();
    if map.len() != nc {
        return Err(Error::InvalidInjection(format!(
            "{name}: map has {} entries for a group of order {nc}",
            map.len()
        )));
    }
    if map.iter().any(|&x| x >= ng) {
        return Err(Error::InvalidInjection(format!("{name}: image out of range")));
    }
    let mut seen = vec![false; ng];
    for &x in map {
        if seen[x] {
            return Err(Error::InvalidInjection(format!("{name}: not injective")));
        }
        seen[x] = true;
    }
    for x in 0..nc {
        for y in 0..nc {
            if map[c.table[x][y]] != g.table[map[x]][map[y]] {
                return Err(Error::InvalidInjection(format!(
                    "{name}: not a homomorphism at ({x},{y})"
                )));
            }
        }
    }
    Ok(())
}

impl GraphOfGroupsLattice {
    pub fn new(
        a: FiniteGroupTable,
        b: FiniteGroupTable,
        c: FiniteGroupTable,
        into_a: Vec<usize>,
        into_b: Vec<usize>,
    ) -> Result<GraphOfGroupsLattice> {
        check_injection(&c, &a, &into_a, "into_A")?;
        check_injection(&c, &b, &into_b, "into_B")?;
        Ok(GraphOfGroupsLattice {
            a,
            b,
            c,
            into_a,
            into_b,
        })
    }

    pub fn covolume(&self) -> BigRational {
        covolume_from_orders(self.a.order(), self.b.order())
    }
}

/// Serialized lattice data; the tables are raw multiplication tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub vertex_groups: Vec<VertexGroupFile>,
    pub edge_group: EdgeGroupFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexGroupFile {
    pub order: u64,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeGroupFile {
    pub order: u64,
    pub table: Vec<Vec<usize>>,
    pub into_a: Vec<usize>,
    pub into_b: Vec<usize>,
}

pub fn lattice_from_file(data: &LatticeFile) -> Result<GraphOfGroupsLattice> {
    if data.vertex_groups.len() != 2 {
        return Err(Error::InvalidInjection(
            "exactly two vertex groups expected".into(),
        ));
    }
    let a = FiniteGroupTable::new(data.vertex_groups[0].table.clone(), None)?;
    let b = FiniteGroupTable::new(data.vertex_groups[1].table.clone(), None)?;
    if a.order() != data.vertex_groups[0].order || b.order() != data.vertex_groups[1].order {
        return Err(Error::NotAGroup("declared order mismatch".into()));
    }
    let c = FiniteGroupTable::new(data.edge_group.table.clone(), None)?;
    if c.order() != data.edge_group.order {
        return Err(Error::NotAGroup("declared edge order mismatch".into()));
    }
    GraphOfGroupsLattice::new(
        a,
        b,
        c,
        data.edge_group.into_a.clone(),
        data.edge_group.into_b.clone(),
    )
}

/// Covolume of an edge-transitive lattice: 1/|A| + 1/|B|.
pub fn covolume_from_orders(a: u64, b: u64) -> BigRational {
    ratio(1, a) + ratio(1, b)
}

/// General form: sum of reciprocal stabilizer orders over a declared list
/// of vertex orbits.
pub fn covolume_from_orbits(orders: &[u64]) -> BigRational {
    orders.iter().fold(BigRational::zero(), |acc, &o| acc + ratio(1, o))
}

/// Per-condition admissibility report for a graph-of-groups lattice at
/// residue characteristic p and tree valence q+1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub index_a: u64,
    pub index_b: u64,
    pub index_a_ok: bool,
    pub index_b_ok: bool,
    pub a_torsion_witness: Option<String>,
    pub b_torsion_witness: Option<String>,
    pub admissible: bool,
}

pub fn admissibility(lat: &GraphOfGroupsLattice, q: u64, p: u64) -> AdmissibilityReport {
    let c = lat.c.order();
    let index_a = lat.a.order() / c;
    let index_b = lat.b.order() / c;
    let index_a_ok = c * (q + 1) == lat.a.order();
    let index_b_ok = c * (q + 1) == lat.b.order();
    let a_torsion_witness = lat.a.p_torsion_witness(p).map(|k| lat.a.labels[k].clone());
    let b_torsion_witness = lat.b.p_torsion_witness(p).map(|k| lat.b.labels[k].clone());
    let admissible =
        index_a_ok && index_b_ok && a_torsion_witness.is_none() && b_torsion_witness.is_none();
    AdmissibilityReport {
        index_a,
        index_b,
        index_a_ok,
        index_b_ok,
        a_torsion_witness,
        b_torsion_witness,
        admissible,
    }
}

pub fn is_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut a = 0u32;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    if rest == 1 {
        Some((p, a))
    } else {
        None
    }
}

/// Lower bound 2 / ((q+1) z delta) for the covolume, with z the order of
/// the center and delta in {1, 2, 4}. Values of q below 514 fall outside
/// the range where the bound is justified; they warn rather than fail.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinCovol {
    pub value: BigRational,
    pub small_q_warning: bool,
}

pub fn min_covol_value(q: u64, z: u64, delta: u64) -> Result<MinCovol> {
    if !matches!(delta, 1 | 2 | 4) {
        return Err(Error::BadDelta(delta));
    }
    if is_prime_power(q).is_none() {
        return Err(Error::BadField(format!("{q} is not a prime power")));
    }
    if z == 0 {
        return Err(Error::Parse("center order must be positive".into()));
    }
    Ok(MinCovol {
        value: ratio(2, (q + 1) * z * delta),
        small_q_warning: q < 514,
    })
}

/// |Z| by direct search: h = h_1(s) h_2(t) is central iff both simple
/// roots evaluate to 1 on it.
pub fn center_order_bruteforce(gcm: &Gcm, field: &Fq) -> u64 {
    let mut count = 0u64;
    for s in field.elements() {
        if field.is_zero(&s) {
            continue;
        }
        for t in field.elements() {
            if field.is_zero(&t) {
                continue;
            }
            let h = TorusElem::new(field, s.clone(), t.clone()).expect("units");
            if h.eval(gcm, field, Root::ALPHA1) == field.one()
                && h.eval(gcm, field, Root::ALPHA2) == field.one()
            {
                count += 1;
            }
        }
    }
    count
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// |Z| through the Smith normal form of the exponent matrix
/// [[2, a21], [a12, 2]] acting on (Z/(q-1))^2: the kernel has size
/// gcd(d1, n) gcd(d2, n) with d1 | d2 the elementary divisors (d2 = 0 when
/// the determinant vanishes).
pub fn center_order_smith(gcm: &Gcm, q: u64) -> u64 {
    let n = q - 1;
    let d1 = gcd(2, gcd(gcm.a12.unsigned_abs(), gcm.a21.unsigned_abs()));
    let det = (4 - gcm.a12 * gcm.a21).unsigned_abs();
    let first = gcd(d1, n);
    if det == 0 {
        first * n
    } else {
        first * gcd(det / d1, n)
    }
}

/// Compare the table-side covolume 1/|A| + 1/|B| with the census over the
/// actual action: the reciprocal stabilizer orders of the two base
/// vertices under the subgroup generated by `gens`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CovolumeCrossCheck {
    pub table_side: BigRational,
    pub census_side: BigRational,
    pub matches: bool,
    pub truncated: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn cross_check_covolume(
    gcm: &Gcm,
    field: &Fq,
    eps: EpsilonPair,
    a_order: u64,
    b_order: u64,
    gens: &[GroupWord],
    radius: u32,
    max_len: usize,
    budget: u64,
) -> Result<CovolumeCrossCheck> {
    let report = orbit_and_stabilizers(gcm, field, eps, gens, radius, max_len, budget)?;
    let mut census = BigRational::zero();
    for base in ["1@base", "2@base"] {
        let (k, _) = report
            .vertex_orbits
            .iter()
            .enumerate()
            .find(|(_, orbit)| orbit.iter().any(|v| v == base))
            .expect("base vertices are in the ball");
        census += ratio(1, report.vertex_stabilizer_orders[k]);
    }
    let table_side = covolume_from_orders(a_order, b_order);
    let matches = table_side == census;
    Ok(CovolumeCrossCheck {
        table_side,
        census_side: census,
        matches,
        truncated: report.truncated,
    })
}
