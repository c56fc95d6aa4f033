//! Command line interface: classes / table / induce / tensor / decompose /
//! verify / conjecture, with JSON reports on stdout and progress on stderr.
//!
//! Character arguments use the grammar `family:exponent[:exponent...]`
//! with families p1, pq2q, pq3, psm, pbig, p3, int, cusp; exponents are
//! discrete logs against the documented tower generators (the tower
//! fingerprint in every report makes them unambiguous).

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::chartable::{self, IrrLabel};
use crate::conjecture::{self, InterpolatingFamily, UnipotentPattern};
use crate::engine::Engine;
use crate::induction::{self, SubgroupSpec};
use crate::tensorlab::{self, Sweep, Theorem1Case, VerifyReport, ALL_THEOREM1_CASES};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "gl3char", version, about = "Exact character theory of GL(3,F_q)")]
pub struct Cli {
    /// Prime power q (2..9); alternative to --prime/--deg.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Characteristic p (with --deg).
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Extension degree n of F_q over F_p (with --prime).
    #[arg(long, global = true)]
    pub deg: Option<u32>,
    /// Seed for random parameter sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Cache directory for fusion tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Override the brute-force induction limit on q.
    #[arg(long, global = true)]
    pub bf_limit: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the canonical conjugacy class list.
    Classes,
    /// Emit the full character table.
    Table,
    /// Induce a class function from a subgroup specification.
    Induce {
        /// JSON SubgroupSpec, or shorthand torus_i:a:b:c, torus_m:lam:alpha,
        /// torus_a:phi, zn:central:twist, zn1:central:twist,
        /// zn_pattern:mask:central:twist.
        #[arg(long)]
        spec: String,
        /// Force the literal Frobenius-formula sweep even for tori.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Pointwise product of two irreducible characters.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Decompose the product of two irreducibles into irreducibles.
    Decompose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Run a verification suite; exit code is nonzero on any failure.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Interpolating-family combinatorics and identity checks.
    Conjecture {
        #[command(subcommand)]
        sub: ConjectureCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifySuite {
    /// Character table validity: counts, orthogonality, regular character.
    Table,
    /// Fast torus induction against the brute-force sweep, all characters.
    Lemma1,
    /// Degenerate-parameter resolutions as exact class-function equalities.
    Lemma2,
    /// Tensor-product identities; all cases unless --case is given.
    Theorem1 {
        #[arg(long)]
        case: Option<String>,
        /// exhaustive | random:N | auto
        #[arg(long, default_value = "auto")]
        sweep: String,
        /// Re-include tuples with degenerate right-hand labels, resolved.
        #[arg(long)]
        experimental_degenerate: bool,
    },
    /// The two limit-case identities.
    Corollary1 {
        #[arg(long, default_value = "auto")]
        sweep: String,
    },
    /// Cuspidal x principal-triple = classical + generalized Gelfand-Graev.
    Prop1 {
        /// Comma-separated nontrivial additive twists (default: all, capped at 2 for q > 4).
        #[arg(long)]
        twists: Option<String>,
    },
    /// Clebsch-Gordan multiplicities for cuspidal x cuspidal.
    Section4,
    /// Frobenius reciprocity for every induction source.
    Reciprocity,
    /// Everything above at this q.
    All,
}

#[derive(Subcommand, Debug)]
pub enum ConjectureCmd {
    /// Layer sizes c_0..c_ñ.
    Coeffs {
        #[arg(long)]
        n: u32,
    },
    /// Subgroup-closed zero patterns with exactly i entries.
    Patterns {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
    },
    /// Check a family (default: the classical two-layer family) at n = 3.
    Check {
        /// JSON family: layers of patterns, e.g. `[[[]],[[[1,2]]]]`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        twists: Option<String>,
        /// Matrix size n; the identity check is only available for n = 3.
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
    /// Exhaustively test all valid n = 3 families.
    Search {
        #[arg(long)]
        twists: Option<String>,
    },
}

fn parse_generic_label(eng: &Engine, s: &str) -> Result<IrrLabel, Error> {
    let label = parse_irr_label(s)?.canonicalize(eng.tower());
    if !label.is_generic(eng.tower()) {
        return Err(Error::DegenerateLabel(format!(
            "{} does not name an irreducible; resolve the degenerate parameters first",
            s
        )));
    }
    Ok(label)
}

fn parse_irr_label(s: &str) -> Result<IrrLabel, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    let err = || Error::InvalidSpec(format!("cannot parse character label '{}'", s));
    let num = |i: usize| -> Result<u32, Error> {
        parts
            .get(i)
            .and_then(|x| x.parse::<u32>().ok())
            .ok_or_else(err)
    };
    let expect_len = |n: usize| -> Result<(), Error> {
        if parts.len() == n {
            Ok(())
        } else {
            Err(err())
        }
    };
    Ok(match parts[0] {
        "p1" => {
            expect_len(2)?;
            IrrLabel::Linear { a: num(1)? }
        }
        "pq2q" => {
            expect_len(2)?;
            IrrLabel::Parabolic2 { a: num(1)? }
        }
        "pq3" | "st" => {
            expect_len(2)?;
            IrrLabel::Steinberg { a: num(1)? }
        }
        "psm" => {
            expect_len(3)?;
            IrrLabel::PairSmall { a: num(1)?, b: num(2)? }
        }
        "pbig" => {
            expect_len(3)?;
            IrrLabel::PairBig { a: num(1)?, b: num(2)? }
        }
        "p3" => {
            expect_len(4)?;
            IrrLabel::Triple { a: num(1)?, b: num(2)?, c: num(3)? }
        }
        "int" => {
            expect_len(3)?;
            IrrLabel::Mixed { a: num(1)?, lam: num(2)? }
        }
        "cusp" => {
            expect_len(2)?;
            IrrLabel::Cuspidal { phi: num(1)? }
        }
        _ => return Err(err()),
    })
}

fn parse_spec(eng: &Engine, s: &str) -> Result<SubgroupSpec, Error> {
    if s.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    let t = eng.tower();
    let parts: Vec<&str> = s.split(':').collect();
    let err = || Error::InvalidSpec(format!("cannot parse subgroup spec '{}'", s));
    let num = |i: usize| -> Result<u32, Error> {
        parts
            .get(i)
            .and_then(|x| x.parse::<u32>().ok())
            .ok_or_else(err)
    };
    Ok(match parts[0] {
        "torus_i" => SubgroupSpec::torus_i(t, num(1)?, num(2)?, num(3)?),
        "torus_m" => SubgroupSpec::torus_m(t, num(1)?, num(2)?),
        "torus_a" => SubgroupSpec::torus_a(t, num(1)?),
        "zn" => SubgroupSpec::zn(t, num(1)?, num(2)? as u8),
        "zn1" => SubgroupSpec::zn1(t, num(1)?, num(2)? as u8),
        "zn_pattern" => SubgroupSpec::ZPattern {
            mask: num(1)? as u8,
            central: crate::chars::MultChar::new(t, 1, num(2)?),
            psi: crate::chars::AddChar::new(num(3)? as u8),
        },
        _ => return Err(err()),
    })
}

fn parse_sweep(s: &str) -> Result<Sweep, Error> {
    if s == "auto" {
        return Ok(Sweep::Auto);
    }
    if s == "exhaustive" {
        return Ok(Sweep::Exhaustive);
    }
    if let Some(n) = s.strip_prefix("random:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad sweep '{}'", s)))?;
        return Ok(Sweep::Random(n));
    }
    Err(Error::InvalidSpec(format!("bad sweep '{}'", s)))
}

fn parse_twists(eng: &Engine, s: &Option<String>) -> Result<Vec<u8>, Error> {
    match s {
        Some(s) => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidSpec(format!("bad twist '{}'", x)))
            })
            .collect(),
        None => {
            let q = eng.q();
            let all: Vec<u8> = (1..q as u8).collect();
            Ok(if q > 4 { all[..2].to_vec() } else { all })
        }
    }
}

fn default_engine(cli: &Cli) -> Result<Engine, Error> {
    let mut eng = match (cli.q, cli.prime, cli.deg) {
        (Some(q), None, None) => Engine::for_q(q)?,
        (None, Some(p), Some(n)) => Engine::new(p, n)?,
        (None, None, None) => Engine::for_q(3)?,
        _ => {
            return Err(Error::InvalidSpec(
                "give either --q or both --prime and --deg".into(),
            ))
        }
    };
    eng.cache_dir = cli.cache_dir.clone();
    if let Some(l) = cli.bf_limit {
        eng.bruteforce_limit = l;
    }
    Ok(eng)
}

fn emit_report(format: Format, report: &VerifyReport) {
    match format {
        Format::Pretty => {
            let status = if report.passed { "PASS" } else { "FAIL" };
            println!(
                "[{}] {} (q={}): {} checked, {} skipped degenerate, {} failures",
                status,
                report.name,
                report.q,
                report.tuples_checked,
                report.skipped_degenerate,
                report.failures.len()
            );
            for f in &report.failures {
                println!("  failure: {}", f);
            }
            for n in &report.notes {
                println!("  note: {}", n);
            }
        }
        _ => println!("{}", serde_json::to_string(report).unwrap()),
    }
}

/// Run the parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, Error> {
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let eng = default_engine(&cli)?;
    let fingerprint = eng.tower().fingerprint();
    eprintln!("# tower {}", fingerprint);

    match &cli.command {
        Command::Classes => {
            let classes = eng.classes();
            let rows: Vec<serde_json::Value> = classes
                .list
                .iter()
                .map(|d| {
                    json!({
                        "label": d.label,
                        "representative": d.representative.row_major(),
                        "size": d.size,
                    })
                })
                .collect();
            let out = json!({
                "q": eng.q(),
                "fingerprint": fingerprint,
                "count": rows.len(),
                "classes": rows,
            });
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Table => {
            let labels = eng.irr_labels().to_vec();
            let classes = eng.classes();
            match cli.format {
                Format::Csv => {
                    // decimal approximations, one row per irreducible
                    let mut header = vec!["label".to_string()];
                    for d in &classes.list {
                        header.push(format!("{:?}", d.label));
                    }
                    println!("{}", header.join(";"));
                    for l in &labels {
                        let cf = eng.irr(l);
                        let mut row = vec![format!("{:?}", l)];
                        for v in &cf.values {
                            let a = v.approx();
                            row.push(format!("{:.6}{:+.6}i", a.re, a.im));
                        }
                        println!("{}", row.join(";"));
                    }
                }
                _ => {
                    let values: Vec<Vec<serde_json::Value>> = labels
                        .iter()
                        .map(|l| eng.irr(l).values.iter().map(|v| v.to_json()).collect())
                        .collect();
                    let out = json!({
                        "q": eng.q(),
                        "fingerprint": fingerprint,
                        "labels": labels,
                        "classes": classes.list.iter().map(|d| d.label).collect::<Vec<_>>(),
                        "values": values,
                    });
                    println!("{}", serde_json::to_string(&out)?);
                }
            }
            Ok(0)
        }
        Command::Induce { spec, bruteforce } => {
            let spec = parse_spec(&eng, spec)?;
            // Result-level cache keyed by (q, spec hash); entries carry the
            // tool version and tower fingerprint and are recomputed on
            // mismatch.
            let cache_path = eng.cache_dir.as_ref().map(|dir| {
                let key = serde_json::to_string(&(&spec, *bruteforce)).unwrap();
                dir.join(format!("induce_q{}_{:016x}.json", eng.q(), fnv1a(key.as_bytes())))
            });
            if let Some(path) = &cache_path {
                if let Ok(text) = std::fs::read_to_string(path) {
                    if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
                        if v["schema_version"] == 1
                            && v["tool_version"] == crate::VERSION
                            && v["fingerprint"] == fingerprint.as_str()
                        {
                            println!("{}", serde_json::to_string(&v["result"])?);
                            return Ok(0);
                        }
                    }
                }
            }
            let cf = if *bruteforce {
                induction::induce_bruteforce(&eng, &spec)?
            } else {
                induction::induce(&eng, &spec)?
            };
            let out = json!({
                "q": eng.q(),
                "fingerprint": fingerprint,
                "spec": spec,
                "values": cf.values.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            });
            if let Some(path) = &cache_path {
                let _ = std::fs::create_dir_all(path.parent().unwrap());
                let entry = json!({
                    "schema_version": 1,
                    "tool_version": crate::VERSION,
                    "fingerprint": fingerprint,
                    "result": out,
                });
                let _ = std::fs::write(path, serde_json::to_string(&entry)?);
            }
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Tensor { left, right } => {
            let l = parse_generic_label(&eng, left)?;
            let r = parse_generic_label(&eng, right)?;
            let prod = eng.irr(&l).product(&eng.irr(&r));
            let out = json!({
                "q": eng.q(),
                "fingerprint": fingerprint,
                "left": l,
                "right": r,
                "values": prod.values.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Decompose { left, right } => {
            let l = parse_generic_label(&eng, left)?;
            let r = parse_generic_label(&eng, right)?;
            let prod = eng.irr(&l).product(&eng.irr(&r));
            let dec = tensorlab::decompose(&eng, &prod)?;
            let mults: Vec<serde_json::Value> = dec
                .multiplicities
                .iter()
                .map(|(lbl, m)| json!({"label": lbl, "multiplicity": m.to_string()}))
                .collect();
            let out = json!({
                "q": eng.q(),
                "fingerprint": fingerprint,
                "left": l,
                "right": r,
                "multiplicities": mults,
            });
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Verify { suite } => {
            let reports = run_verify(&eng, suite, &cli)?;
            let mut all_pass = true;
            for r in &reports {
                emit_report(cli.format, r);
                all_pass &= r.passed;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Conjecture { sub } => run_conjecture(&eng, sub, &cli),
    }
}

fn run_verify(eng: &Engine, suite: &VerifySuite, cli: &Cli) -> Result<Vec<VerifyReport>, Error> {
    Ok(match suite {
        VerifySuite::Table => {
            let rep = chartable::validate_table(eng);
            let mut vr = VerifyReport {
                name: "table".into(),
                q: rep.q,
                tuples_checked: rep.irr_count * (rep.irr_count + 1) / 2,
                skipped_degenerate: 0,
                failures: rep
                    .orthogonality_failures
                    .iter()
                    .map(|(a, b)| format!("orthogonality fails for {:?}, {:?}", a, b))
                    .collect(),
                experimental_checked: 0,
                experimental_failures: vec![],
                notes: rep.notes.clone(),
                passed: rep.passed,
            };
            vr.notes.push(format!("degrees: {:?}", rep.degrees));
            if !rep.count_ok {
                vr.failures.push("label count != class count".into());
            }
            if !rep.sum_squares_ok {
                vr.failures.push("sum of squared degrees != |G|".into());
            }
            if !rep.regular_ok {
                vr.failures.push("regular character identity fails".into());
            }
            if !rep.dimension_column_ok {
                vr.failures.push("identity column != degrees".into());
            }
            vec![vr]
        }
        VerifySuite::Lemma1 => vec![tensorlab::verify_lemma1(eng)?],
        VerifySuite::Lemma2 => vec![tensorlab::verify_lemma2(eng)?],
        VerifySuite::Theorem1 {
            case,
            sweep,
            experimental_degenerate,
        } => {
            let sweep = parse_sweep(sweep)?;
            let cases: Vec<Theorem1Case> = match case {
                Some(c) => vec![Theorem1Case::parse(c)
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown case '{}'", c)))?],
                None => ALL_THEOREM1_CASES.to_vec(),
            };
            cases
                .iter()
                .map(|&c| {
                    eprintln!("# theorem1 case {}", c.name());
                    tensorlab::verify_theorem1(eng, c, sweep, cli.seed, *experimental_degenerate)
                })
                .collect()
        }
        VerifySuite::Corollary1 { sweep } => {
            vec![tensorlab::verify_corollary1(eng, parse_sweep(sweep)?, cli.seed)]
        }
        VerifySuite::Prop1 { twists } => {
            let tw = parse_twists(eng, twists)?;
            vec![tensorlab::verify_prop1(eng, &tw)?]
        }
        VerifySuite::Section4 => vec![tensorlab::verify_section4(eng)?],
        VerifySuite::Reciprocity => vec![tensorlab::verify_reciprocity(eng)?],
        VerifySuite::All => {
            let mut out = run_verify(eng, &VerifySuite::Table, cli)?;
            out.extend(run_verify(eng, &VerifySuite::Lemma1, cli)?);
            out.extend(run_verify(eng, &VerifySuite::Lemma2, cli)?);
            out.extend(run_verify(
                eng,
                &VerifySuite::Theorem1 {
                    case: None,
                    sweep: "auto".into(),
                    experimental_degenerate: false,
                },
                cli,
            )?);
            out.extend(run_verify(eng, &VerifySuite::Corollary1 { sweep: "auto".into() }, cli)?);
            out.extend(run_verify(eng, &VerifySuite::Prop1 { twists: None }, cli)?);
            out.extend(run_verify(eng, &VerifySuite::Section4, cli)?);
            out.extend(run_verify(eng, &VerifySuite::Reciprocity, cli)?);
            out
        }
    })
}

fn run_conjecture(eng: &Engine, sub: &ConjectureCmd, cli: &Cli) -> Result<i32, Error> {
    match sub {
        ConjectureCmd::Coeffs { n } => {
            let c = conjecture::coefficients(*n)?;
            println!("{}", serde_json::to_string(&json!({"n": n, "coefficients": c}))?);
            Ok(0)
        }
        ConjectureCmd::Patterns { n, i } => {
            let pats = conjecture::enumerate_patterns(*n, *i);
            let rows: Vec<serde_json::Value> = pats
                .iter()
                .map(|p| json!(p.zeros.iter().collect::<Vec<_>>()))
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json!({"n": n, "i": i, "count": rows.len(), "patterns": rows}))?
            );
            Ok(0)
        }
        ConjectureCmd::Check { family, twists, n } => {
            if *n != 3 {
                let c = conjecture::coefficients(*n)?;
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "n": n,
                        "coefficients": c,
                        "identity_check": "unavailable: no GL(n) character data for n >= 4; \
                                           only the combinatorial side is implemented",
                    }))?
                );
                return Ok(0);
            }
            let fam = match family {
                None => InterpolatingFamily::classical_n3(),
                Some(s) => parse_family(s)?,
            };
            let tw = parse_twists(eng, twists)?;
            let report = conjecture::check_family_n3(eng, &fam, &tw)?;
            emit_report(cli.format, &report);
            Ok(if report.passed { 0 } else { 1 })
        }
        ConjectureCmd::Search { twists } => {
            let tw = parse_twists(eng, twists)?;
            let results = conjecture::search_families_n3(eng, &tw)?;
            let mut ok = true;
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|(fam, rep)| {
                    ok &= rep.failures.is_empty();
                    json!({
                        "layers": fam.layers.iter().map(|l| {
                            l.iter().map(|p| p.zeros.iter().collect::<Vec<_>>()).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                        "passed": rep.passed,
                        "tuples_checked": rep.tuples_checked,
                        "failures": rep.failures,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json!({"q": eng.q(), "families": rows}))?
            );
            let _ = ok;
            Ok(0)
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn parse_family(s: &str) -> Result<InterpolatingFamily, Error> {
    let layers: Vec<Vec<Vec<(u32, u32)>>> = serde_json::from_str(s)?;
    Ok(InterpolatingFamily {
        n: 3,
        layers: layers
            .into_iter()
            .map(|l| {
                l.into_iter()
                    .map(|p| UnipotentPattern::new(3, p))
                    .collect()
            })
            .collect(),
    })
}
