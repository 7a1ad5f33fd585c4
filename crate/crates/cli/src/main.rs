//! kmlat: exact computations in minimal rank-2 Kac-Moody groups over
//! finite fields.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmlat_core::ffield::Fq;
use kmlat_core::lattice::{
    admissibility, center_order_bruteforce, center_order_smith, covolume_from_orders,
    lattice_from_file, min_covol_value, LatticeFile,
};
use kmlat_core::laurent::oracle_act;
use kmlat_core::lie::{self, TruncatedLie};
use kmlat_core::root_datum::{positive_roots, Gcm, Root};
use kmlat_core::tree::{
    act, ball, orbit_and_stabilizers, parse_word, Atom, Edge, GroupWord, DEFAULT_BUDGET,
};
use kmlat_core::unipotent::{generator, torsion_class, u_mul, TorsionClass, TorusElem, UWord};
use kmlat_core::Error;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kmlat", version, about = "rank-2 Kac-Moody groups over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GcmArg {
    /// Cartan matrix as "2,a12;a21,2"
    #[arg(long, value_parser = parse_gcm)]
    gcm: Gcm,
}

#[derive(Args)]
struct FieldArg {
    /// Field order q = p^a, optionally with a modulus: "p", "p^a" or
    /// "p^a/c0,...,1"
    #[arg(long = "q", visible_alias = "field")]
    q: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate positive real roots on one side
    Roots {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        side: u8,
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Structure-constant signs with per-generator certificates
    Signs {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Order of the center of G(F_q), computed two independent ways
    Center {
        #[command(flatten)]
        gcm: GcmArg,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Normal form and torsion class of a word in U1 * U2
    Normalform {
        #[command(flatten)]
        gcm: GcmArg,
        #[command(flatten)]
        field: FieldArg,
        /// word in the grammar "x(k1,k2;c) x(k1,k2;c) ..."
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply a group word to an edge of the tree
    Act {
        #[command(flatten)]
        gcm: GcmArg,
        #[command(flatten)]
        field: FieldArg,
        /// word in the grammar "x(k1,k2;c) n(i) h(c1,c2)"
        #[arg(long)]
        word: String,
        /// edge as "i1:t1,i2:t2,..." or "base"
        #[arg(long)]
        edge: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Orbits and stabilizer orders of a generated subgroup on a ball
    Orbit {
        #[command(flatten)]
        gcm: GcmArg,
        #[command(flatten)]
        field: FieldArg,
        /// generator words; repeat the flag for several
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Covolume of a graph-of-groups lattice
    Covol {
        /// vertex group orders (quick form)
        #[arg(long = "A", conflicts_with = "file")]
        a: Option<u64>,
        #[arg(long = "B", requires = "a", conflicts_with = "file")]
        b: Option<u64>,
        /// lattice file (JSON) with multiplication tables and injections
        #[arg(long, required_unless_present = "a")]
        file: Option<std::path::PathBuf>,
        /// check admissibility over F_q (file form only)
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        p: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lower bound for lattice covolumes, tabulated over q
    Mincovol {
        #[command(flatten)]
        gcm: GcmArg,
        #[arg(long, conflicts_with = "q_range")]
        q: Option<u64>,
        /// inclusive range "a..b" of prime powers to tabulate
        #[arg(long = "q-range")]
        q_range: Option<String>,
        /// 1, 2, 4 or all
        #[arg(long, default_value = "all")]
        delta: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Differential check of the tree engine against the matrix oracle
    Selftest {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_gcm(s: &str) -> Result<Gcm, String> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err("expected two rows separated by ';'".into());
    }
    let mut m = [[0i64; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != 2 {
            return Err(format!("row {} must have two entries", i + 1));
        }
        for (j, e) in entries.iter().enumerate() {
            m[i][j] = e
                .trim()
                .parse()
                .map_err(|_| format!("bad matrix entry '{e}'"))?;
        }
    }
    if m[0][0] != 2 || m[1][1] != 2 {
        return Err("diagonal entries must be 2".into());
    }
    Gcm::new(m[0][1], m[1][0]).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    code: &'a str,
    message: String,
}

fn fail(e: Error) -> ExitCode {
    let doc = ErrorDoc {
        code: e.code(),
        message: e.to_string(),
    };
    eprintln!("{}", serde_json::to_string(&doc).unwrap());
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn emit<T: Serialize>(format: Format, doc: &T, text: String) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).unwrap()),
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Roots {
            gcm,
            side,
            count,
            format,
        } => {
            let roots = positive_roots(&gcm.gcm, side, count);
            let pairs: Vec<[i64; 2]> = roots.iter().map(|r| [r.k1, r.k2]).collect();
            let text = roots
                .iter()
                .map(|r| format!("({},{})", r.k1, r.k2))
                .collect::<Vec<_>>()
                .join(",");
            emit(format, &pairs, text);
        }
        Command::Signs { gcm, format } => signs(&gcm.gcm, format)?,
        Command::Center { gcm, field, format } => {
            let f = Fq::parse(&field.q)?;
            if f.order() > 1 << 16 {
                return Err(Error::BadField(format!(
                    "q = {} exceeds the brute-force bound 2^16",
                    f.order()
                )));
            }
            let brute = center_order_bruteforce(&gcm.gcm, &f);
            let smith = center_order_smith(&gcm.gcm, f.order());
            if brute != smith {
                return Err(Error::BadCartanMatrix(format!(
                    "internal disagreement: brute force {brute}, Smith form {smith}"
                )));
            }
            #[derive(Serialize)]
            struct Doc {
                q: u64,
                order: u64,
                brute_force: u64,
                smith_form: u64,
            }
            emit(
                format,
                &Doc {
                    q: f.order(),
                    order: brute,
                    brute_force: brute,
                    smith_form: smith,
                },
                format!("{brute}"),
            );
        }
        Command::Normalform {
            gcm,
            field,
            word,
            format,
        } => normalform(&gcm.gcm, &field.q, &word, format)?,
        Command::Act {
            gcm,
            field,
            word,
            edge,
            budget,
            format,
        } => {
            let f = Fq::parse(&field.q)?;
            let eps = lie::epsilon_pair(&gcm.gcm)?;
            let w = parse_word(&f, &word)?;
            let e = Edge::parse(&f, &edge)?;
            let (image, used) = act(&gcm.gcm, &f, eps, &w, &e, budget)?;
            #[derive(Serialize)]
            struct Doc {
                edge: String,
                cell_length: usize,
                budget_used: u64,
            }
            let doc = Doc {
                edge: image.display(&f),
                cell_length: image.len(),
                budget_used: used,
            };
            emit(format, &doc, format!("edge {}", doc.edge));
        }
        Command::Orbit {
            gcm,
            field,
            words,
            radius,
            max_len,
            budget,
            format,
        } => {
            let f = Fq::parse(&field.q)?;
            let eps = lie::epsilon_pair(&gcm.gcm)?;
            let gens = words
                .iter()
                .map(|w| parse_word(&f, w))
                .collect::<Result<Vec<_>, _>>()?;
            let report = orbit_and_stabilizers(&gcm.gcm, &f, eps, &gens, radius, max_len, budget)?;
            let mut text = format!(
                "group elements: {}{}\n",
                report.num_elements,
                if report.truncated { " (truncated)" } else { "" }
            );
            for (orbit, stab) in report.edge_orbits.iter().zip(&report.edge_stabilizer_orders) {
                text.push_str(&format!(
                    "edge orbit (stabilizer order {stab}): {}\n",
                    orbit.join(" ")
                ));
            }
            for (orbit, stab) in report
                .vertex_orbits
                .iter()
                .zip(&report.vertex_stabilizer_orders)
            {
                text.push_str(&format!(
                    "vertex orbit (stabilizer order {stab}): {}\n",
                    orbit.join(" ")
                ));
            }
            emit(format, &report, text.trim_end().to_string());
        }
        Command::Covol {
            a,
            b,
            file,
            q,
            p,
            format,
        } => covol(a, b, file, q, p, format)?,
        Command::Mincovol {
            gcm,
            q,
            q_range,
            delta,
            format,
        } => mincovol(&gcm.gcm, q, q_range, &delta, format)?,
        Command::Selftest { format } => selftest(format)?,
    }
    Ok(())
}

fn signs(gcm: &Gcm, format: Format) -> Result<(), Error> {
    let window = (-gcm.entry(1, 2)).max(-gcm.entry(2, 1)) as usize + 2;
    let lie_alg = TruncatedLie::new(*gcm, window)?;
    let pair = lie_alg.epsilon_pair()?;
    #[derive(Serialize)]
    struct Certificate {
        generator: u8,
        epsilon: i8,
        truncation_window: usize,
        stable_at_larger_window: bool,
    }
    #[derive(Serialize)]
    struct Doc {
        eps1: i8,
        eps2: i8,
        certificates: Vec<Certificate>,
    }
    let larger = TruncatedLie::new(*gcm, window + 2)?;
    let large_pair = larger.epsilon_pair()?;
    let doc = Doc {
        eps1: pair.eps1,
        eps2: pair.eps2,
        certificates: vec![
            Certificate {
                generator: 1,
                epsilon: pair.eps1,
                truncation_window: window,
                stable_at_larger_window: pair.eps1 == large_pair.eps1,
            },
            Certificate {
                generator: 2,
                epsilon: pair.eps2,
                truncation_window: window,
                stable_at_larger_window: pair.eps2 == large_pair.eps2,
            },
        ],
    };
    emit(
        format,
        &doc,
        format!("eps1 = {}\neps2 = {}", pair.eps1, pair.eps2),
    );
    Ok(())
}

fn display_uword(f: &Fq, w: &UWord) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for syl in &w.syllables {
        for (r, c) in &syl.coords {
            parts.push(format!("x({},{};{})", r.k1, r.k2, f.to_string_elem(c)));
        }
    }
    parts.join(" ")
}

fn normalform(gcm: &Gcm, q: &str, word: &str, format: Format) -> Result<(), Error> {
    let f = Fq::parse(q)?;
    let parsed = parse_word(&f, word)?;
    let mut w = UWord::identity();
    for atom in &parsed.atoms {
        match atom {
            Atom::X(r, c) => {
                use kmlat_core::root_datum::{classify_root, RootClass};
                if !matches!(classify_root(gcm, *r), RootClass::Pos1 | RootClass::Pos2) {
                    return Err(Error::NotRealRoot(r.k1, r.k2));
                }
                w = u_mul(&f, &w, &generator(gcm, &f, *r, c)?);
            }
            _ => {
                return Err(Error::Parse(
                    "normalform accepts unipotent atoms x(k1,k2;c) only".into(),
                ))
            }
        }
    }
    #[derive(Serialize)]
    struct Doc {
        normal_form: String,
        syllables: usize,
        class: String,
        order: Option<u64>,
        conjugator: Option<String>,
        core: Option<String>,
    }
    let class = torsion_class(&f, &w);
    let doc = match &class {
        TorsionClass::Identity => Doc {
            normal_form: display_uword(&f, &w),
            syllables: w.len(),
            class: "IDENTITY".into(),
            order: Some(1),
            conjugator: None,
            core: None,
        },
        TorsionClass::Torsion {
            order,
            conjugator,
            core,
        } => Doc {
            normal_form: display_uword(&f, &w),
            syllables: w.len(),
            class: "P_POWER_IN_FACTOR_CONJUGATE".into(),
            order: Some(*order),
            conjugator: Some(display_uword(&f, conjugator)),
            core: Some(display_uword(
                &f,
                &UWord {
                    syllables: vec![core.clone()],
                },
            )),
        },
        TorsionClass::InfiniteOrder => Doc {
            normal_form: display_uword(&f, &w),
            syllables: w.len(),
            class: "INFINITE".into(),
            order: None,
            conjugator: None,
            core: None,
        },
    };
    let mut text = format!("{}\nclass: {}", doc.normal_form, doc.class);
    if let Some(o) = doc.order {
        text.push_str(&format!("\norder: {o}"));
    }
    if let (Some(c), Some(k)) = (&doc.conjugator, &doc.core) {
        text.push_str(&format!("\nconjugator: {c}\ncore: {k}"));
    }
    emit(format, &doc, text);
    Ok(())
}

fn covol(
    a: Option<u64>,
    b: Option<u64>,
    file: Option<std::path::PathBuf>,
    q: Option<u64>,
    p: Option<u64>,
    format: Format,
) -> Result<(), Error> {
    if let (Some(a), Some(b)) = (a, b) {
        let v = covolume_from_orders(a, b);
        emit(format, &v, format!("{v}"));
        return Ok(());
    }
    let path = file.expect("clap enforces --file when --A is absent");
    let data = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let parsed: LatticeFile =
        serde_json::from_str(&data).map_err(|e| Error::Parse(format!("bad lattice file: {e}")))?;
    let lat = lattice_from_file(&parsed)?;
    let v = lat.covolume();
    #[derive(Serialize)]
    struct Doc {
        covolume: String,
        admissible: Option<bool>,
        index_a_ok: Option<bool>,
        index_b_ok: Option<bool>,
        torsion_free: Option<bool>,
    }
    let mut doc = Doc {
        covolume: v.to_string(),
        admissible: None,
        index_a_ok: None,
        index_b_ok: None,
        torsion_free: None,
    };
    let mut text = format!("{v}");
    if let (Some(q), Some(p)) = (q, p) {
        let rep = admissibility(&lat, q, p);
        doc.admissible = Some(rep.admissible);
        doc.index_a_ok = Some(rep.index_a_ok);
        doc.index_b_ok = Some(rep.index_b_ok);
        doc.torsion_free =
            Some(rep.a_torsion_witness.is_none() && rep.b_torsion_witness.is_none());
        text.push_str(&format!("\nadmissible over F_{q}: {}", rep.admissible));
    }
    emit(format, &doc, text);
    Ok(())
}

fn prime_powers_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi)
        .filter(|&n| kmlat_core::lattice::is_prime_power(n).is_some())
        .collect()
}

fn mincovol(
    gcm: &Gcm,
    q: Option<u64>,
    q_range: Option<String>,
    delta: &str,
    format: Format,
) -> Result<(), Error> {
    let qs = match (q, q_range) {
        (Some(q), None) => vec![q],
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("bad range '{r}', expected a..b")))?;
            let lo: u64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range bound '{lo}'")))?;
            let hi: u64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range bound '{hi}'")))?;
            prime_powers_in(lo, hi)
        }
        (None, None) => return Err(Error::Parse("give --q or --q-range".into())),
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    let deltas: Vec<u64> = match delta {
        "all" => vec![1, 2, 4],
        d => vec![d
            .parse()
            .map_err(|_| Error::Parse(format!("bad delta '{d}'")))?],
    };
    #[derive(Serialize)]
    struct Row {
        q: u64,
        center_order: u64,
        delta: u64,
        bound: String,
        approx: f64,
        small_q_warning: bool,
    }
    let mut rows = Vec::new();
    for q in qs {
        let z = center_order_smith(gcm, q);
        for &d in &deltas {
            let m = min_covol_value(q, z, d)?;
            let approx = m.value.to_f64().unwrap_or(f64::NAN);
            rows.push(Row {
                q,
                center_order: z,
                delta: d,
                bound: m.value.to_string(),
                approx,
                small_q_warning: m.small_q_warning,
            });
        }
    }
    let text = rows
        .iter()
        .map(|r| {
            format!(
                "q={} z={} delta={} (candidate) bound={} approx={:.6e}{}",
                r.q,
                r.center_order,
                r.delta,
                r.bound,
                r.approx,
                if r.small_q_warning {
                    "  WARNING: q below the bound's range of validity"
                } else {
                    ""
                }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(format, &rows, text);
    Ok(())
}

fn selftest(format: Format) -> Result<(), Error> {
    let gcm = Gcm::symmetric(2)?;
    let mut checks = 0u64;
    for q in ["2", "3"] {
        let f = Fq::parse(q)?;
        let eps = lie::epsilon_pair(&gcm)?;
        let mut atoms = vec![Atom::N(1), Atom::N(2)];
        for t in f.elements() {
            atoms.push(Atom::X(Root::new(1, 0), t.clone()));
            atoms.push(Atom::X(Root::new(0, 1), t.clone()));
            atoms.push(Atom::X(Root::new(-1, 0), t.clone()));
            atoms.push(Atom::X(Root::new(2, 1), t.clone()));
            if !f.is_zero(&t) {
                atoms.push(Atom::H(TorusElem::simple(&f, 1, &t)));
            }
        }
        for e in ball(&f, 2) {
            for atom in &atoms {
                let w = GroupWord {
                    atoms: vec![atom.clone()],
                };
                let (engine, _) = act(&gcm, &f, eps, &w, &e, DEFAULT_BUDGET)?;
                let oracle = oracle_act(&gcm, &f, eps, &w, &e)?;
                if engine != oracle {
                    return Err(Error::ExplorationTruncated(format!(
                        "selftest mismatch: q={q}, atom on edge {}",
                        e.display(&f)
                    )));
                }
                checks += 1;
            }
        }
    }
    #[derive(Serialize)]
    struct Doc {
        checks: u64,
        passed: bool,
    }
    emit(
        format,
        &Doc {
            checks,
            passed: true,
        },
        format!("selftest: {checks} engine/oracle checks passed"),
    );
    Ok(())
}
