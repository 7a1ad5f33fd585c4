//! End-to-end acceptance suite: one pass/fail line per criterion.

use std::time::{Duration, Instant};

use kmlat_core::ffield::Fq;
use kmlat_core::lattice::{
    admissibility, center_order_bruteforce, center_order_smith, covolume_from_orders,
    cross_check_covolume, min_covol_value, FiniteGroupTable, GraphOfGroupsLattice,
};
use kmlat_core::laurent::oracle_act;
use kmlat_core::lie::{self, TruncatedLie};
use kmlat_core::root_datum::{
    classify_root, positive_roots, sum_of_roots_witness, Gcm, Root,
};
use kmlat_core::tree::{
    act, ball, local_action, parse_word, Atom, GroupWord, ProjPoint, DEFAULT_BUDGET,
};
use kmlat_core::unipotent::{
    generator, torsion_class, u_inv, u_mul, TorsionClass, TorusElem, UWord,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type CResult = Result<(), String>;

fn within(start: Instant, cap: Duration, what: &str) -> CResult {
    let took = start.elapsed();
    if took <= cap {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, budget {cap:?}"))
    }
}

/// 1. Side-1 root strings follow x_{n+1} = m x_n - x_{n-1}.
fn c1_root_recurrence() -> CResult {
    let start = Instant::now();
    for m in 2..=5i64 {
        let gcm = Gcm::new(-m, -m).map_err(|e| e.to_string())?;
        let roots = positive_roots(&gcm, 1, 12);
        if roots.len() != 12 {
            return Err(format!("m={m}: expected 12 roots, got {}", roots.len()));
        }
        for n in 1..11 {
            let pred = Root::new(
                m * roots[n].k1 - roots[n - 1].k1,
                m * roots[n].k2 - roots[n - 1].k2,
            );
            if roots[n + 1] != pred {
                return Err(format!(
                    "m={m}: root {} does not follow the recurrence after {} and {}",
                    roots[n + 1],
                    roots[n - 1],
                    roots[n]
                ));
            }
        }
        if m == 2 {
            for (n, r) in roots.iter().enumerate() {
                if *r != Root::new(n as i64 + 1, n as i64) {
                    return Err(format!("affine root list wrong at index {n}: {r}"));
                }
            }
        }
    }
    within(start, Duration::from_secs(1), "root enumeration")
}

/// 2. Sign pairs from the Lie side, stable under enlarging the window,
/// with eta_i^2 fixing e_i and f_i exactly.
fn c2_epsilon_pairs() -> CResult {
    let start = Instant::now();
    let cases = [
        (-2i64, -2i64, (1i8, 1i8)),
        (-3, -3, (-1, -1)),
        (-2, -3, (1, -1)),
        (-3, -2, (-1, 1)),
    ];
    for (a12, a21, want) in cases {
        let gcm = Gcm::new(a12, a21).map_err(|e| e.to_string())?;
        let h = (-a12).max(-a21) as usize + 2;
        let small = TruncatedLie::new(gcm, h).map_err(|e| e.to_string())?;
        let large = TruncatedLie::new(gcm, h + 2).map_err(|e| e.to_string())?;
        let ps = small.epsilon_pair().map_err(|e| e.to_string())?;
        let pl = large.epsilon_pair().map_err(|e| e.to_string())?;
        if ps != pl {
            return Err(format!("({a12},{a21}): pair changed between windows H and H+2"));
        }
        if (ps.eps1, ps.eps2) != want {
            return Err(format!(
                "({a12},{a21}): expected {want:?}, got ({}, {})",
                ps.eps1, ps.eps2
            ));
        }
        for i in [1u8, 2u8] {
            let e = small.gen_e(i);
            let fi = small
                .eta(i, &e)
                .map_err(|err| err.to_string())?
                .scaled(&BigRational::from(BigInt::from(-1)));
            for x in [&e, &fi] {
                let once = small.eta(i, x).map_err(|err| err.to_string())?;
                let twice = small.eta(i, &once).map_err(|err| err.to_string())?;
                if !twice.exact {
                    return Err(format!("({a12},{a21}): eta_{i}^2 lost exactness"));
                }
                let diff = twice.plus(&x.scaled(&BigRational::from(BigInt::from(-1))));
                if !diff.is_zero() {
                    return Err(format!(
                        "({a12},{a21}): eta_{i}^2 does not fix the generator"
                    ));
                }
            }
        }
    }
    within(start, Duration::from_secs(30), "sign computation")
}

fn random_word(rng: &mut StdRng, gcm: &Gcm, field: &Fq, max_syllables: usize) -> UWord {
    let mut w = UWord::identity();
    let n = rng.gen_range(0..=max_syllables);
    let mut side = if rng.gen_bool(0.5) { 1u8 } else { 2u8 };
    for _ in 0..n {
        let roots = positive_roots(gcm, side, 3);
        let mut syl = UWord::identity();
        for r in roots {
            let c = field.from_u64(rng.gen_range(0..field.order()));
            syl = u_mul(field, &syl, &generator(gcm, field, r, &c).unwrap());
        }
        w = u_mul(field, &w, &syl);
        side = 3 - side;
    }
    w
}

/// 3. Free-product arithmetic and the torsion trichotomy.
fn c3_free_product() -> CResult {
    let start = Instant::now();
    let gcm = Gcm::new(-2, -2).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x6b6d6c6174);
    for q in ["2^2", "5"] {
        let f = Fq::parse(q).map_err(|e| e.to_string())?;
        for _ in 0..500 {
            let a = random_word(&mut rng, &gcm, &f, 3);
            let b = random_word(&mut rng, &gcm, &f, 3);
            let c = random_word(&mut rng, &gcm, &f, 3);
            let left = u_mul(&f, &u_mul(&f, &a, &b), &c);
            let right = u_mul(&f, &a, &u_mul(&f, &b, &c));
            if left != right {
                return Err(format!("associativity fails over F_{q}"));
            }
            if !u_mul(&f, &a, &u_inv(&f, &a)).is_identity() {
                return Err(format!("inverse fails over F_{q}"));
            }
            if !left.is_reduced() {
                return Err("product not in normal form".into());
            }
        }
        // every 2-syllable cyclically reduced word has infinite order,
        // with syllable length of powers growing linearly
        for _ in 0..50 {
            let a = generator(
                &gcm,
                &f,
                Root::new(1, 0),
                &f.from_u64(rng.gen_range(1..f.order())),
            )
            .unwrap();
            let b = generator(
                &gcm,
                &f,
                Root::new(0, 1),
                &f.from_u64(rng.gen_range(1..f.order())),
            )
            .unwrap();
            let w = u_mul(&f, &a, &b);
            if torsion_class(&f, &w) != TorsionClass::InfiniteOrder {
                return Err("2-syllable cyclically reduced word not classified infinite".into());
            }
            let mut pw = UWord::identity();
            for n in 1..=20usize {
                pw = u_mul(&f, &pw, &w);
                if pw.len() != 2 * n {
                    return Err(format!("power length {} at n={n}, expected {}", pw.len(), 2 * n));
                }
            }
        }
    }
    // single-syllable words have order exactly p: exhaustive for q <= 5,
    // support <= 3
    for q in ["2", "3", "2^2", "5"] {
        let f = Fq::parse(q).map_err(|e| e.to_string())?;
        let p = f.p();
        for side in [1u8, 2u8] {
            let roots = positive_roots(&gcm, side, 3);
            for code in 1..f.order().pow(3) {
                let mut w = UWord::identity();
                let mut c = code;
                for r in &roots {
                    let v = f.from_u64(c % f.order());
                    c /= f.order();
                    w = u_mul(&f, &w, &generator(&gcm, &f, *r, &v).unwrap());
                }
                if w.is_identity() {
                    continue;
                }
                let mut pw = UWord::identity();
                for k in 1..=p {
                    pw = u_mul(&f, &pw, &w);
                    if k < p && pw.is_identity() {
                        return Err(format!("order below p over F_{q}"));
                    }
                }
                if !pw.is_identity() {
                    return Err(format!("order not p over F_{q}"));
                }
            }
        }
    }
    within(start, Duration::from_secs(10), "free-product suite")
}

fn atom_pool(field: &Fq) -> Vec<Atom> {
    let mut atoms = vec![Atom::N(1), Atom::N(2)];
    for t in field.elements() {
        atoms.push(Atom::X(Root::new(1, 0), t.clone()));
        atoms.push(Atom::X(Root::new(0, 1), t.clone()));
        atoms.push(Atom::X(Root::new(2, 1), t.clone()));
        atoms.push(Atom::X(Root::new(-1, 0), t.clone()));
        for u in field.elements() {
            if !field.is_zero(&t) && !field.is_zero(&u) {
                atoms.push(Atom::H(
                    TorusElem::new(field, t.clone(), u.clone()).unwrap(),
                ));
            }
        }
    }
    atoms
}

/// 4. Differential test of the engine against the Laurent-matrix oracle
/// in the affine case, plus action axioms on random composites.
fn c4_differential() -> CResult {
    let start = Instant::now();
    let gcm = Gcm::new(-2, -2).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x74726565);
    for q in ["2", "3", "5"] {
        let f = Fq::parse(q).map_err(|e| e.to_string())?;
        let eps = lie::epsilon_pair(&gcm).map_err(|e| e.to_string())?;
        let pool = atom_pool(&f);
        let edges3 = ball(&f, 3);
        for atom in &pool {
            let w = GroupWord {
                atoms: vec![atom.clone()],
            };
            for e in &edges3 {
                let (engine, _) =
                    act(&gcm, &f, eps, &w, e, DEFAULT_BUDGET).map_err(|err| err.to_string())?;
                let oracle = oracle_act(&gcm, &f, eps, &w, e).map_err(|err| err.to_string())?;
                if engine != oracle {
                    return Err(format!(
                        "q={q}: mismatch for {} on {}: engine {}, oracle {}",
                        w.display(&f),
                        e.display(&f),
                        engine.display(&f),
                        oracle.display(&f)
                    ));
                }
            }
        }
        // randomized composites: action axioms and oracle agreement
        let edges2 = ball(&f, 2);
        for _ in 0..200 {
            let wlen = rng.gen_range(1..=4);
            let mk = |rng: &mut StdRng| GroupWord {
                atoms: (0..wlen)
                    .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                    .collect(),
            };
            let w1 = mk(&mut rng);
            let w2 = mk(&mut rng);
            let e = &edges2[rng.gen_range(0..edges2.len())];
            let (inner, _) =
                act(&gcm, &f, eps, &w2, e, DEFAULT_BUDGET).map_err(|err| err.to_string())?;
            let (two, _) =
                act(&gcm, &f, eps, &w1, &inner, DEFAULT_BUDGET).map_err(|err| err.to_string())?;
            let (one, _) = act(&gcm, &f, eps, &w1.concat(&w2), e, DEFAULT_BUDGET)
                .map_err(|err| err.to_string())?;
            if two != one {
                return Err(format!("q={q}: action axiom fails"));
            }
            let oracle = oracle_act(&gcm, &f, eps, &w1.concat(&w2), e)
                .map_err(|err| err.to_string())?;
            if one != oracle {
                return Err(format!("q={q}: composite disagrees with oracle"));
            }
            let (back, _) = act(
                &gcm,
                &f,
                eps,
                &w1.inverse(&f),
                &act(&gcm, &f, eps, &w1, e, DEFAULT_BUDGET)
                    .map_err(|err| err.to_string())?
                    .0,
                DEFAULT_BUDGET,
            )
            .map_err(|err| err.to_string())?;
            if back != *e {
                return Err(format!("q={q}: inverse axiom fails"));
            }
        }
    }
    within(start, Duration::from_secs(300), "differential suite")
}

/// 5. Local action on the star of a base vertex: permutation structure,
/// triviality away from alpha_i, and the stated n_i formula
/// (0 <-> infinity, c -> c^{-1}).
fn c5_local_star() -> CResult {
    let gcm = Gcm::new(-2, -2).map_err(|e| e.to_string())?;
    for q in ["2", "3", "2^2", "5", "7", "2^3", "3^2"] {
        let f = Fq::parse(q).map_err(|e| e.to_string())?;
        let star: Vec<ProjPoint> = std::iter::once(ProjPoint::Infinity)
            .chain(f.elements().map(ProjPoint::Finite))
            .collect();
        for i in [1u8, 2u8] {
            let mut atoms = vec![Atom::N(i)];
            let other = positive_roots(&gcm, i, 2)[1];
            for t in f.elements() {
                atoms.push(Atom::X(Root::simple(i), t.clone()));
                atoms.push(Atom::X(Root::simple(3 - i), t.clone()));
                atoms.push(Atom::X(other, t.clone()));
                if !f.is_zero(&t) {
                    atoms.push(Atom::H(TorusElem::simple(&f, 1, &t)));
                }
            }
            for atom in &atoms {
                let mut images: Vec<ProjPoint> = Vec::new();
                for p in &star {
                    let img = local_action(&gcm, &f, atom, i, p).map_err(|e| e.to_string())?;
                    images.push(img);
                }
                let mut sorted = images.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != star.len() {
                    return Err(format!("q={q}: atom does not permute the star"));
                }
                // positive non-simple-i root groups fix the star pointwise
                if let Atom::X(r, _) = atom {
                    if *r != Root::simple(i) && images != star {
                        return Err(format!("q={q}: x at {r} moves the type-{i} star"));
                    }
                }
            }
            // stated n_i action: 0 <-> infinity and c -> c^{-1}
            let n = Atom::N(i);
            if local_action(&gcm, &f, &n, i, &ProjPoint::Infinity).map_err(|e| e.to_string())?
                != ProjPoint::Finite(f.zero())
            {
                return Err(format!("q={q}: n_{i} does not send infinity to 0"));
            }
            if local_action(&gcm, &f, &n, i, &ProjPoint::Finite(f.zero()))
                .map_err(|e| e.to_string())?
                != ProjPoint::Infinity
            {
                return Err(format!("q={q}: n_{i} does not send 0 to infinity"));
            }
            for c in f.elements().filter(|c| !f.is_zero(c)) {
                let img = local_action(&gcm, &f, &n, i, &ProjPoint::Finite(c.clone()))
                    .map_err(|e| e.to_string())?;
                let stated = ProjPoint::Finite(f.inv(&c).unwrap());
                if img != stated {
                    let show = |p: &ProjPoint| match p {
                        ProjPoint::Infinity => "infinity".to_string(),
                        ProjPoint::Finite(v) => f.to_string_elem(v),
                    };
                    return Err(format!(
                        "q={q}: n_{i} sends {} to {}, the stated c -> c^-1 gives {}",
                        f.to_string_elem(&c),
                        show(&img),
                        show(&stated)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// 6. Covolume arithmetic and the census cross-check on the affine q = 2
/// fixture.
fn c6_covolume() -> CResult {
    if covolume_from_orders(6, 4) != BigRational::new(BigInt::from(5), BigInt::from(12)) {
        return Err("covolume(6,4) != 5/12".into());
    }
    let gcm = Gcm::new(-2, -2).map_err(|e| e.to_string())?;
    let f = Fq::parse("2").map_err(|e| e.to_string())?;
    let eps = lie::epsilon_pair(&gcm).map_err(|e| e.to_string())?;
    let g1 = parse_word(&f, "x(1,0;1) x(-1,0;1)").map_err(|e| e.to_string())?;
    let g2 = parse_word(&f, "x(0,1;1) x(0,-1;1)").map_err(|e| e.to_string())?;
    for g in [&g1, &g2] {
        let cube = g.concat(g).concat(g);
        for e in ball(&f, 2) {
            let (img, _) =
                act(&gcm, &f, eps, &cube, &e, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if img != e {
                return Err("fixture generator does not have order 3".into());
            }
        }
    }
    let check = cross_check_covolume(&gcm, &f, eps, 3, 3, &[g1, g2], 1, 6, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    if !check.matches {
        return Err(format!(
            "census {} disagrees with table {}",
            check.census_side, check.table_side
        ));
    }
    Ok(())
}

/// 7. Center order at q = 521 two ways, the covolume bound value, and the
/// small-q warning boundary.
fn c7_center_and_bound() -> CResult {
    let gcm = Gcm::new(-2, -2).map_err(|e| e.to_string())?;
    let f = Fq::parse("521").map_err(|e| e.to_string())?;
    let brute = center_order_bruteforce(&gcm, &f);
    let smith = center_order_smith(&gcm, 521);
    if brute != smith {
        return Err(format!("center orders disagree: {brute} vs {smith}"));
    }
    if brute != 1040 {
        return Err(format!("center order {brute}, expected 1040"));
    }
    let m = min_covol_value(521, brute, 1).map_err(|e| e.to_string())?;
    if m.value != BigRational::new(BigInt::from(1), BigInt::from(271440)) {
        return Err(format!("bound value {}", m.value));
    }
    for (q, warn) in [(521u64, false), (1024, false), (512, true), (499, true), (8, true)] {
        let got = min_covol_value(q, 2, 2).map_err(|e| e.to_string())?.small_q_warning;
        if got != warn {
            return Err(format!("warning flag at q={q}: got {got}, expected {warn}"));
        }
    }
    Ok(())
}

/// 8. Every mutation of a valid lattice datum is detected by the
/// validators or the admissibility screen.
fn c8_admissibility_mutations() -> CResult {
    let valid = GraphOfGroupsLattice::new(
        FiniteGroupTable::cyclic(3),
        FiniteGroupTable::cyclic(3),
        FiniteGroupTable::trivial(),
        vec![0],
        vec![0],
    )
    .map_err(|e| e.to_string())?;
    if !admissibility(&valid, 2, 2).admissible {
        return Err("baseline fixture not admissible".into());
    }
    // wrong index
    let mutated = GraphOfGroupsLattice::new(
        FiniteGroupTable::cyclic(4),
        FiniteGroupTable::cyclic(3),
        FiniteGroupTable::trivial(),
        vec![0],
        vec![0],
    )
    .map_err(|e| e.to_string())?;
    let rep = admissibility(&mutated, 2, 2);
    if rep.index_a_ok || rep.admissible {
        return Err("index mutation not detected".into());
    }
    // right index, p-torsion present
    let torsion = GraphOfGroupsLattice::new(
        FiniteGroupTable::cyclic(6),
        FiniteGroupTable::cyclic(6),
        FiniteGroupTable::trivial(),
        vec![0],
        vec![0],
    )
    .map_err(|e| e.to_string())?;
    let rep = admissibility(&torsion, 5, 2);
    if !rep.index_a_ok || rep.a_torsion_witness.is_none() || rep.admissible {
        return Err("torsion mutation not detected".into());
    }
    // injection that is not a homomorphism
    let c2 = FiniteGroupTable::cyclic(2);
    let bad = GraphOfGroupsLattice::new(
        FiniteGroupTable::cyclic(6),
        FiniteGroupTable::cyclic(6),
        c2.clone(),
        vec![0, 1],
        vec![0, 3],
    );
    if bad.is_ok() {
        return Err("non-homomorphism injection not detected".into());
    }
    // non-injective map
    let bad = GraphOfGroupsLattice::new(
        FiniteGroupTable::cyclic(6),
        FiniteGroupTable::cyclic(6),
        c2,
        vec![0, 0],
        vec![0, 3],
    );
    if bad.is_ok() {
        return Err("non-injective injection not detected".into());
    }
    // corrupted multiplication table
    let mut table = FiniteGroupTable::cyclic(3).table;
    table[1][1] = 1;
    if FiniteGroupTable::new(table, None).is_ok() {
        return Err("corrupted table not detected".into());
    }
    Ok(())
}

/// 9. Sum-of-roots witnesses for the a12 = -1 shapes.
fn c9_sum_witnesses() -> CResult {
    for a21 in [-2i64, -3] {
        let gcm = Gcm::new(-1, a21).map_err(|e| e.to_string())?;
        let (total, first, second) = sum_of_roots_witness(&gcm).map_err(|e| e.to_string())?;
        if total != first.add(&second) {
            return Err(format!("a21={a21}: witness does not sum"));
        }
        let t = Gcm::new(a21, -1).map_err(|e| e.to_string())?;
        for r in [total, first, second] {
            if !classify_root(&t, r).is_positive() {
                return Err(format!("a21={a21}: witness root {r} not positive real"));
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> CResult)> = vec![
        ("root strings and recurrence", c1_root_recurrence),
        ("epsilon pairs and eta involutions", c2_epsilon_pairs),
        ("free-product arithmetic and torsion", c3_free_product),
        ("tree action vs Laurent oracle", c4_differential),
        ("local star actions", c5_local_star),
        ("covolume and orbit census", c6_covolume),
        ("center order and covolume bound", c7_center_and_bound),
        ("admissibility mutation detection", c8_admissibility_mutations),
        ("sum-of-roots witnesses", c9_sum_witnesses),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        match &result {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", k + 1),
            Err(e) => {
                println!("criterion {}: FAIL  {name} ({took:.2?}): {e}", k + 1);
                failures.push(format!("criterion {} ({name}): {e}", k + 1));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "failed criteria:\n{}",
        failures.join("\n")
    );
}
