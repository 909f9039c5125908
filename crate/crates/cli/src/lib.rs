//! Command-line front end for `braidcover`.
//!
//! Every subcommand prints plain `key value` lines, or a JSON object with
//! the same values under `--json`. Exit codes: 1 for unreadable or invalid
//! input, 2 when the requested invariant is undefined, 3 when the input is
//! well formed but outside the operation's domain.

use std::io::{self, Read, Write};

use braidcover::algebra::FinAbGroup;
use braidcover::cover::{CoverError, LabeledBraid, Site};
use braidcover::format::{self, FormatError};
use braidcover::obstruction::{self, Move, ObstructionError, Verdict};
use braidcover::surgery::{self, H1Class, SurgeryDiagram, SurgeryError};
use braidcover::{homology, par};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "braidcover",
    version,
    about = "Branched covers over labeled braids and their contact invariants"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the labels close up around the braid.
    Validate {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Fold, transitivity, simplicity, cyclicity and ramification per component.
    Classify {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Self-linking number of a braid closure that is a knot.
    Sl {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Euler characteristic, boundary count and genus of the lifted page.
    Page {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// First homology of the branched cover of the 3-sphere.
    H1 {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Apply a move to the branch locus and print the new labeled braid.
    Move {
        file: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Gap between strands I and I+1 (connect).
        #[arg(long)]
        site: Option<usize>,
        /// Number of letters below the connect site.
        #[arg(long, default_value_t = 0)]
        height: usize,
        /// Component to stabilize, counted from 1 (stab).
        #[arg(long)]
        component: Option<usize>,
    },
    /// d3, c1, spin structures and Gamma of a Legendrian surgery diagram.
    Surgery {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Negative continued fraction of -p/q.
    #[command(allow_negative_numbers = true)]
    Contfrac {
        p: i64,
        q: i64,
        /// Also print the framings of the rolled-up chain.
        #[arg(long)]
        rolled: bool,
    },
    /// Braidability verdict for a labeled braid, or an embeddability verdict
    /// from a single c1 when no braid is given.
    Obstruct {
        braid: Option<String>,
        /// Surgery diagram whose c1 is attested for one orientation of the locus.
        #[arg(long = "c1", value_name = "FILE")]
        c1: Vec<String>,
        /// The branch locus is attested to be invertible.
        #[arg(long)]
        invertible: bool,
    },
    /// Whether CP^n immerses in codimension 2 with trivial normal bundle.
    #[command(allow_negative_numbers = true)]
    CpImmersion { n: i64 },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Op {
    Connect,
    ConnectAll,
    Stab,
}

/// Output of one input, in both encodings.
struct Report {
    text: String,
    json: Value,
}

struct Failure {
    code: i32,
    message: String,
    /// Values computed before the failure, printed anyway.
    partial: Option<Report>,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self {
            code,
            message: message.to_string(),
            partial: None,
        }
    }

    fn with(mut self, report: Report) -> Self {
        self.partial = Some(report);
        self
    }
}

type Outcome = Result<Report, Failure>;

fn input(e: FormatError) -> Failure {
    Failure::new(1, e)
}

fn cover(e: CoverError) -> Failure {
    match e {
        CoverError::InvalidLabeling | CoverError::Braid(_) => Failure::new(1, e),
        _ => Failure::new(3, e),
    }
}

fn surgery_failure(e: SurgeryError) -> Failure {
    match e {
        SurgeryError::ChernClassNotTorsion => Failure::new(2, e),
        SurgeryError::NotLegendrianSurgery => Failure::new(3, e),
        _ => Failure::new(1, e),
    }
}

fn int(x: &BigInt) -> Value {
    i64::try_from(x)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

fn group_json(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.invariant_factors().iter().map(int).collect::<Vec<_>>(),
    })
}

fn class_json(c: &H1Class) -> Value {
    json!({
        "coordinates": c.canonical().iter().map(int).collect::<Vec<_>>(),
        "group": group_json(&c.group()),
        "meridians": c.coefficients().iter().map(int).collect::<Vec<_>>(),
    })
}

/// Canonical coordinates, then the raw coefficients on the meridians.
fn class_text(c: &H1Class) -> String {
    let raw: Vec<String> = c.coefficients().iter().map(ToString::to_string).collect();
    format!("{c} meridians ({})", raw.join(", "))
}

fn verdict_report(v: &Verdict) -> Report {
    let mut text = format!("status {}\nreasons {}\n", v.status, v.reasons.join(" "));
    for n in &v.notes {
        text += &format!("note {n}\n");
    }
    Report {
        text,
        json: json!({"status": v.status.as_str(), "reasons": v.reasons, "notes": v.notes}),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(lb: &LabeledBraid) -> Outcome {
    let p = lb.propagate_and_validate();
    let top: Vec<String> = p.top_labels.iter().map(ToString::to_string).collect();
    let report = Report {
        text: format!("valid {}\ntop {}\n", yes(p.valid), top.join(" ")),
        json: json!({"valid": p.valid, "top_labels": top}),
    };
    if p.valid {
        Ok(report)
    } else {
        Err(Failure::new(1, "labels do not close up around the braid").with(report))
    }
}

fn classify(lb: &LabeledBraid) -> Outcome {
    let r = lb.classify_cover().map_err(cover)?;
    let mut text = format!(
        "fold {}\ntransitive {}\nsimple {}\ncyclic {}\ncomponents {}\n",
        r.fold,
        yes(r.transitive),
        yes(r.simple),
        yes(r.cyclic),
        r.components_of_branch_locus
    );
    let mut comps = Vec::new();
    for (i, c) in r.ramification.iter().enumerate() {
        let strands: Vec<String> = c.strands.iter().map(ToString::to_string).collect();
        let cycles: Vec<String> = c.cycle_type.iter().map(ToString::to_string).collect();
        text += &format!(
            "component {} strands {} label {} cycles {}{}\n",
            i + 1,
            strands.join(","),
            c.label,
            cycles.join(","),
            if c.multiply_ramified {
                " multiply-ramified"
            } else {
                ""
            }
        );
        comps.push(json!({
            "strands": c.strands,
            "label": c.label.to_string(),
            "cycle_type": c.cycle_type,
            "multiply_ramified": c.multiply_ramified,
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "fold": r.fold,
            "transitive": r.transitive,
            "simple": r.simple,
            "cyclic": r.cyclic,
            "components": r.components_of_branch_locus,
            "ramification": comps,
        }),
    })
}

fn self_linking(text: &str) -> Outcome {
    let b = format::parse_braid_file(text).map_err(input)?;
    let sl = b.self_linking().map_err(|e| Failure::new(3, e))?;
    Ok(Report {
        text: format!("{sl}\n"),
        json: json!({"sl": sl}),
    })
}

fn page(lb: &LabeledBraid) -> Outcome {
    let s = lb.page_surface().map_err(cover)?;
    Ok(Report {
        text: format!(
            "chi {}\nboundaries {}\ngenus {}\nsheets {}\nconnected {}\n",
            s.euler_char,
            s.boundary_count,
            s.genus,
            s.sheets,
            yes(s.connected)
        ),
        json: json!({
            "chi": s.euler_char,
            "boundaries": s.boundary_count,
            "genus": s.genus,
            "sheets": s.sheets,
            "connected": s.connected,
        }),
    })
}

fn h1(lb: &LabeledBraid) -> Outcome {
    let g = homology::branched_h1(lb).map_err(cover)?;
    Ok(Report {
        text: format!("{g}\n"),
        json: group_json(&g),
    })
}

fn braid_json(lb: &LabeledBraid) -> Value {
    json!({
        "strands": lb.strands(),
        "fold": lb.fold(),
        "word": lb.braid().letters(),
        "labels": lb.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn apply_move(
    lb: &LabeledBraid,
    op: Op,
    site: Option<usize>,
    height: usize,
    component: Option<usize>,
) -> Outcome {
    let (out, moves) = match op {
        Op::Connect => {
            let gap = site.ok_or_else(|| Failure::new(1, "--op connect needs --site"))?;
            let m = Move::Connect(Site { gap, height });
            (m.apply(lb).map_err(cover)?, vec![m])
        }
        Op::ConnectAll => {
            let (out, sites) = lb.connect_all().map_err(cover)?;
            (out, sites.into_iter().map(Move::Connect).collect())
        }
        Op::Stab => {
            let c = component.ok_or_else(|| Failure::new(1, "--op stab needs --component"))?;
            if c == 0 {
                return Err(Failure::new(1, "components are counted from 1"));
            }
            let m = Move::Stabilize { component: c - 1 };
            (m.apply(lb).map_err(cover)?, vec![m])
        }
    };
    let delta = obstruction::d3_delta(&obstruction::MoveTrace::new(moves.clone()));
    let sites: Vec<Value> = moves
        .iter()
        .filter_map(|m| match m {
            Move::Connect(s) => Some(json!({"gap": s.gap, "height": s.height})),
            Move::Stabilize { .. } => None,
        })
        .collect();
    let mut text = format!("# d3 change {delta}\n");
    for s in &sites {
        text += &format!("# connect gap {} height {}\n", s["gap"], s["height"]);
    }
    text += &format::write_labeled_braid(&out);
    let mut j = braid_json(&out);
    j["d3_change"] = delta.into();
    j["connect_sites"] = sites.into();
    Ok(Report { text, json: j })
}

fn surgery_report(d: &SurgeryDiagram) -> Outcome {
    let sig = d.signature();
    let mut text = format!("components {}\nsignature {sig}\n", d.len());
    let mut j = json!({"components": d.len(), "signature": sig});
    let c1 = match d.c1_class() {
        Ok(c) => c,
        Err(e) => return Err(surgery_failure(e).with(Report { text, json: j })),
    };
    text += &format!("c1 {}\n", class_text(&c1));
    j["c1"] = class_json(&c1);
    let mut spins = Vec::new();
    for s in d.characteristic_sublinks() {
        let g = d.gamma_invariant(&s).map_err(surgery_failure)?;
        text += &format!("spin {s} gamma {}\n", class_text(&g));
        spins.push(json!({"sublink": s.members.iter().map(|i| i + 1).collect::<Vec<_>>(), "gamma": class_json(&g)}));
    }
    j["spins"] = spins.into();
    match (d.c1_squared(), d.d3_invariant()) {
        (Ok(sq), Ok(d3)) => {
            text += &format!("c1^2 {sq}\nd3 {d3}\n");
            j["c1_squared"] = sq.to_string().into();
            j["d3"] = d3.to_string().into();
            Ok(Report { text, json: j })
        }
        (Err(e), _) | (_, Err(e)) => {
            text += "c1^2 undefined\nd3 undefined\n";
            j["c1_squared"] = Value::Null;
            j["d3"] = Value::Null;
            Err(surgery_failure(e).with(Report { text, json: j }))
        }
    }
}

fn contfrac(p: i64, q: i64, rolled: bool) -> Outcome {
    let cf = surgery::continued_fraction(p, q).map_err(|e| Failure::new(3, e))?;
    let mut text = format!("{cf}\n");
    let mut j = json!({"coefficients": cf.coefficients()});
    if rolled {
        let b = surgery::rolled_up_framings(&cf);
        text += &format!("rolled {b:?}\n");
        j["rolled"] = b.into();
    }
    Ok(Report { text, json: j })
}

fn cp_immersion(n: i64) -> Outcome {
    let err = |e: ObstructionError| Failure::new(3, e);
    let v = obstruction::cpn_immersion_obstruction(n).map_err(err)?;
    let p = obstruction::cpn_pontryagin_class(n).map_err(err)?;
    let mut r = verdict_report(&v);
    let coeffs: Vec<String> = p.iter().map(ToString::to_string).collect();
    r.text += &format!("pontryagin {}\n", coeffs.join(" "));
    r.json["pontryagin"] = p.iter().map(int).collect::<Vec<_>>().into();
    Ok(r)
}

fn read_input(path: &str) -> Result<String, Failure> {
    let res = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|e| Failure::new(1, format!("cannot read: {e}")))
}

fn labeled(text: &str) -> Result<LabeledBraid, Failure> {
    format::parse_labeled_braid(text).map_err(input)
}

fn diagram(path: &str) -> Result<SurgeryDiagram, Failure> {
    format::parse_surgery(&read_input(path)?).map_err(input)
}

fn obstruct(braid: Option<&str>, c1: &[String], invertible: bool) -> Outcome {
    let classes = c1
        .iter()
        .map(|p| {
            diagram(p)
                .and_then(|d| d.c1_class().map_err(surgery_failure))
                .map_err(|f| Failure::new(f.code, format!("{p}: {}", f.message)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let v = match braid {
        Some(path) => {
            let lb = labeled(&read_input(path)?)
                .map_err(|f| Failure::new(f.code, format!("{path}: {}", f.message)))?;
            let given = (!classes.is_empty()).then_some(classes.as_slice());
            obstruction::braidability_verdict(&lb, given, invertible).map_err(cover)?
        }
        None => match classes.as_slice() {
            [c] => obstruction::embeddability_verdict(c),
            _ => {
                return Err(Failure::new(
                    1,
                    "without a braid, give exactly one --c1 diagram",
                ))
            }
        },
    };
    Ok(verdict_report(&v))
}

/// Runs `f` on every file, in parallel when enabled, keeping input order.
fn per_file(files: &[String], f: impl Fn(&str) -> Outcome + Sync) -> Vec<(String, Outcome)> {
    let texts: Vec<(String, Result<String, Failure>)> =
        files.iter().map(|p| (p.clone(), read_input(p))).collect();
    par::map(&texts, |(path, text)| {
        let out = match text {
            Ok(t) => f(t),
            Err(e) => Err(Failure::new(e.code, e.message.clone())),
        };
        (path.clone(), out)
    })
}

fn emit(
    results: Vec<(String, Outcome)>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let many = results.len() > 1;
    let mut code = 0;
    let mut values = Vec::new();
    for (path, res) in results {
        let (report, failure) = match res {
            Ok(r) => (Some(r), None),
            Err(mut f) => (f.partial.take(), Some(f)),
        };
        if let Some(f) = &failure {
            if code == 0 {
                code = f.code;
            }
            if path.is_empty() {
                writeln!(err, "braidcover: {}", f.message)?;
            } else {
                writeln!(err, "braidcover: {path}: {}", f.message)?;
            }
        }
        if json {
            let mut v = json!({});
            if many {
                v["file"] = path.clone().into();
            }
            if let Some(r) = report {
                v["result"] = r.json;
            }
            if let Some(f) = failure {
                v["error"] = json!({"code": f.code, "message": f.message});
            }
            values.push(if many {
                v
            } else {
                v.get("result").cloned().unwrap_or(v)
            });
        } else if let Some(r) = report {
            if many {
                writeln!(out, "# {path}")?;
            }
            write!(out, "{}", r.text)?;
        }
    }
    if json {
        let v = if many {
            Value::Array(values)
        } else {
            values.pop().unwrap_or(Value::Null)
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        )?;
    }
    Ok(code)
}

/// Parses `args` (program name first) and runs one subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    1
                }
            };
        }
    };
    let single = |o: Outcome| vec![(String::new(), o)];
    let results = match &cli.command {
        Command::Validate { files } => per_file(files, |t| validate(&labeled(t)?)),
        Command::Classify { files } => per_file(files, |t| classify(&labeled(t)?)),
        Command::Sl { files } => per_file(files, self_linking),
        Command::Page { files } => per_file(files, |t| page(&labeled(t)?)),
        Command::H1 { files } => per_file(files, |t| h1(&labeled(t)?)),
        Command::Surgery { files } => per_file(files, |t| {
            surgery_report(&format::parse_surgery(t).map_err(input)?)
        }),
        Command::Move {
            file,
            op,
            site,
            height,
            component,
        } => per_file(std::slice::from_ref(file), |t| {
            apply_move(&labeled(t)?, *op, *site, *height, *component)
        }),
        Command::Contfrac { p, q, rolled } => single(contfrac(*p, *q, *rolled)),
        Command::Obstruct {
            braid,
            c1,
            invertible,
        } => single(obstruct(braid.as_deref(), c1, *invertible)),
        Command::CpImmersion { n } => single(cp_immersion(*n)),
    };
    match emit(results, cli.json, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "braidcover: {e}");
            1
        }
    }
}
