//! Command-line front end.
//!
//! Commands return an [`Outcome`] instead of writing to the process streams
//! so they can be driven from tests. Exit codes:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success, or a true verdict                |
//! | 1    | false verdict (mismatch, not in Δ)        |
//! | 2    | parse or usage error                      |
//! | 3    | bad reference (model index out of range)  |
//! | 4    | precondition violation                    |

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::Error;
use crate::factor::{decompose, factor_point_image, verify_word, Claim};
use crate::isometry::{image_index, Mat4, UIsometry};
use crate::lattice::{DivisorClass, NumClass, SurfaceType};
use crate::letters::{GeneratorLetter, GeneratorWord, LetterKind, Sl2, WordLetter};
use crate::special::{enumerate_admissible_models, in_delta, DeltaModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_REF: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "bielliptic",
    version,
    about = "Exact numerical Grothendieck group computations for bielliptic surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Surface type data: n, k, |G|, split flag, multisection degrees.
    Info {
        surface: String,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a class `r,x,y,s` in a model of Delta, or the model list.
    Delta {
        surface: String,
        #[arg(allow_hyphen_values = true)]
        class: Option<String>,
        /// Model index in canonical order (default 0).
        #[arg(long)]
        model: Option<usize>,
        /// List the admissible models.
        #[arg(long)]
        models: bool,
        /// Also print the class as (r, aA + bB, s).
        #[arg(long)]
        ab: bool,
        #[arg(long)]
        json: bool,
    },
    /// Index of the autoequivalence image in O_Delta(N(S)).
    Index {
        surface: String,
        #[arg(long)]
        all_models: bool,
        #[arg(long)]
        json: bool,
    },
    /// Word sending the point class to an isotropic primitive class of Delta.
    Factor {
        surface: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        ab: bool,
        #[arg(long)]
        json: bool,
    },
    /// Split a Delta-preserving isometry (16 row-major integers) into a
    /// word and a residual block.
    Decompose {
        surface: String,
        #[arg(allow_hyphen_values = true, num_args = 1.., required = true)]
        matrix: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check a word against a class (4 integers) or a matrix (16 integers).
    Verify {
        surface: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(allow_hyphen_values = true, num_args = 1.., required = true)]
        claim: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    check: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            check: "parse",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, check) = match &e {
            Error::InvalidSurfaceType(_) => (EXIT_USAGE, "surface type"),
            Error::NonSplit(_) => (EXIT_PRECONDITION, "non-split type"),
            Error::NotIsotropic => (EXIT_PRECONDITION, "not isotropic"),
            Error::NotPrimitive | Error::ZeroClass => (EXIT_PRECONDITION, "not primitive"),
            Error::NotInDelta => (EXIT_PRECONDITION, "not in Delta"),
            Error::NotAnIsometry => (EXIT_PRECONDITION, "not an isometry"),
            Error::DeltaNotPreserved => (EXIT_PRECONDITION, "Delta not preserved"),
            Error::NotSl2 { .. } => (EXIT_PRECONDITION, "not in SL2"),
            Error::Divisibility { .. } => (EXIT_PRECONDITION, "divisibility"),
            Error::MixedSurfaceTypes(..) => (EXIT_PRECONDITION, "mixed surface types"),
            Error::InadmissibleModel(_) => (EXIT_BAD_REF, "inadmissible model"),
        };
        Failure {
            code,
            check,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let json = match &cli.command {
        Command::Info { json, .. }
        | Command::Delta { json, .. }
        | Command::Index { json, .. }
        | Command::Factor { json, .. }
        | Command::Decompose { json, .. }
        | Command::Verify { json, .. } => *json,
    };
    let result = match cli.command {
        Command::Info { surface, .. } => cmd_info(&surface),
        Command::Delta {
            surface,
            class,
            model,
            models,
            ab,
            ..
        } => cmd_delta(&surface, class.as_deref(), model, models, ab),
        Command::Index {
            surface,
            all_models,
            ..
        } => cmd_index(&surface, all_models),
        Command::Factor {
            surface, class, ab, ..
        } => cmd_factor(&surface, &class, ab),
        Command::Decompose {
            surface, matrix, ..
        } => cmd_decompose(&surface, &matrix),
        Command::Verify {
            surface,
            word,
            claim,
            ..
        } => cmd_verify(&surface, &word, &claim),
    };
    match result {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if json {
                format!("{}\n", report.json)
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: if json {
                format!("{}\n", json!({"error": f.check, "message": f.message}))
            } else {
                String::new()
            },
            stderr: format!("error ({}): {}\n", f.check, f.message),
        },
    }
}

fn int(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("decimal integers are JSON numbers"))
}

/// A signed decimal integer in canonical form: no sign on zero, no leading
/// zeros, no `+`.
pub fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    canonical.then(|| s.parse().expect("validated digits"))
}

fn parse_integer_list(s: &str) -> Option<Vec<BigInt>> {
    s.split(',').map(parse_integer).collect()
}

/// Parses the class literal `r,x,y,s`.
pub fn parse_class(s: &str) -> Option<NumClass> {
    let v = parse_integer_list(s)?;
    let coords: [BigInt; 4] = v.try_into().ok()?;
    Some(NumClass::from_coords(coords))
}

pub fn format_class(v: &NumClass) -> String {
    v.to_string()
}

fn fraction(num: &BigInt, den: u32) -> String {
    let den = BigInt::from(den);
    let g = num.gcd(&den);
    let (p, q) = if g.is_zero() {
        (num.clone(), den)
    } else {
        (num / &g, den / &g)
    };
    if q == BigInt::from(1) {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

/// `(r, (x/n)A + (y/k)B, s)` with reduced fractions.
pub fn format_class_ab(t: SurfaceType, v: &NumClass) -> String {
    let p = t.profile();
    let a = fraction(&v.d.x, p.n);
    let b_abs = fraction(&v.d.y.abs(), p.k);
    let sign = if v.d.y.is_negative() { "-" } else { "+" };
    format!("({}, {a}A {sign} {b_abs}B, {})", v.r, v.s)
}

fn parse_letter(t: SurfaceType, token: &str) -> std::result::Result<WordLetter, Failure> {
    let bad = || Failure::usage(format!("bad letter `{token}`"));
    let (body, inverted) = match token.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (token, false),
    };
    let letter = if body == "shift" {
        GeneratorLetter::shift(t)
    } else {
        let (name, rest) = body.split_once('(').ok_or_else(bad)?;
        let args = parse_integer_list(rest.strip_suffix(')').ok_or_else(bad)?).ok_or_else(bad)?;
        match (name, args.as_slice()) {
            ("tlb", [mx, my]) => GeneratorLetter::tensor(t, DivisorClass::new(mx.clone(), my.clone())),
            ("fma", [c, a, d, b]) => GeneratorLetter::new(
                t,
                LetterKind::RelFmA(Sl2::new(c.clone(), a.clone(), d.clone(), b.clone())?),
            )?,
            ("fmb", [c, a, d, b]) => GeneratorLetter::new(
                t,
                LetterKind::RelFmB(Sl2::new(c.clone(), a.clone(), d.clone(), b.clone())?),
            )?,
            _ => return Err(bad()),
        }
    };
    Ok(WordLetter { letter, inverted })
}

/// Parses a whitespace-separated word literal; `id` is the empty word.
pub fn parse_word(t: SurfaceType, s: &str) -> std::result::Result<GeneratorWord, String> {
    parse_word_inner(t, s).map_err(|f| f.message)
}

fn parse_word_inner(t: SurfaceType, s: &str) -> std::result::Result<GeneratorWord, Failure> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    if tokens == ["id"] {
        return Ok(GeneratorWord::empty(t));
    }
    if tokens.is_empty() {
        return Err(Failure::usage("empty word literal (use `id`)"));
    }
    let letters = tokens
        .into_iter()
        .map(|tok| parse_letter(t, tok))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(GeneratorWord::new(t, letters)?)
}

fn parse_surface(s: &str) -> std::result::Result<SurfaceType, Failure> {
    let id: i64 = s
        .parse()
        .map_err(|_| Failure::usage(format!("surface type `{s}` is not an integer")))?;
    Ok(SurfaceType::new(id)?)
}

fn class_arg(s: &str) -> std::result::Result<NumClass, Failure> {
    parse_class(s).ok_or_else(|| {
        Failure::usage(format!("bad class literal `{s}`: expected r,x,y,s"))
    })
}

/// Integers from one or more arguments separated by commas or whitespace.
fn integers_arg(parts: &[String]) -> std::result::Result<Vec<BigInt>, Failure> {
    parts
        .iter()
        .flat_map(|p| p.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|tok| !tok.is_empty())
        .map(|tok| parse_integer(tok).ok_or_else(|| Failure::usage(format!("bad integer `{tok}`"))))
        .collect()
}

fn matrix_arg(parts: &[String]) -> std::result::Result<Mat4, Failure> {
    let ints = integers_arg(parts)?;
    Mat4::from_row_major(&ints)
        .ok_or_else(|| Failure::usage(format!("expected 16 integers, got {}", ints.len())))
}

fn model_json(i: usize, m: &DeltaModel) -> Value {
    let h = m.l_div();
    json!({
        "model": i,
        "hnf": [[h.a, h.b], [0, h.d]],
        "delta_index": m.index_in_lattice(),
    })
}

fn cmd_info(surface: &str) -> CmdResult {
    let t = parse_surface(surface)?;
    let p = t.profile();
    let split = if p.is_split() { "split" } else { "non-split" };
    let mut text = String::new();
    writeln!(text, "type {t}").unwrap();
    writeln!(text, "n={} k={} |G|={} {split}", p.n, p.k, p.g_order).unwrap();
    writeln!(text, "G={} Gamma={} action: {}", p.g_desc, p.gamma_desc, p.action_desc).unwrap();
    writeln!(text, "lambda_pA={} lambda_pB={}", p.lambda_pa, p.lambda_pb).unwrap();
    writeln!(
        text,
        "Num(S) basis: e1=A/{}, e2=B/{}, Gram [[0,1],[1,0]], A.B={}",
        p.n,
        p.k,
        p.n * p.k
    )
    .unwrap();
    let json = json!({
        "type": t.id(),
        "n": p.n,
        "k": p.k,
        "g_order": p.g_order,
        "split": p.is_split(),
        "lambda_pA": p.lambda_pa,
        "lambda_pB": p.lambda_pb,
        "group": p.g_desc,
        "gamma": p.gamma_desc,
        "action": p.action_desc,
        "basis": [format!("A/{}", p.n), format!("B/{}", p.k)],
    });
    Ok(Report::ok(text, json))
}

fn cmd_delta(
    surface: &str,
    class: Option<&str>,
    model: Option<usize>,
    list: bool,
    ab: bool,
) -> CmdResult {
    let t = parse_surface(surface)?;
    let models = enumerate_admissible_models(t);
    if list {
        let mut text = String::new();
        for (i, m) in models.iter().enumerate() {
            let [l1, l2] = m.l_div().columns();
            writeln!(
                text,
                "model {i}: L={} generated by ({},{}) and ({},{}); [N(S):Delta]={}",
                m.l_div(),
                l1.x,
                l1.y,
                l2.x,
                l2.y,
                m.index_in_lattice()
            )
            .unwrap();
        }
        let json = json!({
            "type": t.id(),
            "models": models.iter().enumerate().map(|(i, m)| model_json(i, m)).collect::<Vec<_>>(),
        });
        return Ok(Report::ok(text, json));
    }
    let class = class.ok_or_else(|| Failure::usage("missing class literal (or pass --models)"))?;
    let v = class_arg(class)?;
    let index = model.unwrap_or(0);
    let m = models.get(index).ok_or_else(|| Failure {
        code: EXIT_BAD_REF,
        check: "model index",
        message: format!("model {index} out of range: type {t} has {} models", models.len()),
    })?;
    let rank_ok = m.rank_condition(&v);
    let divisor_ok = m.divisor_condition(&v);
    let member = in_delta(m, &v);
    let mut text = String::new();
    if member {
        writeln!(text, "{v} in Delta (model {index}, L={})", m.l_div()).unwrap();
    } else {
        let mut why = Vec::new();
        if !rank_ok {
            why.push(format!("rank not divisible by n={}", t.profile().n));
        }
        if !divisor_ok {
            why.push(format!("divisor part not in L={}", m.l_div()));
        }
        writeln!(text, "{v} not in Delta (model {index}): {}", why.join("; ")).unwrap();
    }
    if ab {
        writeln!(text, "{}", format_class_ab(t, &v)).unwrap();
    }
    let json = json!({
        "type": t.id(),
        "model": index,
        "class": format_class(&v),
        "coords": v.coords().iter().map(int).collect::<Vec<_>>(),
        "in_delta": member,
        "rank_condition": rank_ok,
        "divisor_condition": divisor_ok,
    });
    Ok(Report {
        code: if member { EXIT_OK } else { EXIT_FALSE },
        text,
        json,
    })
}

fn cmd_index(surface: &str, all_models: bool) -> CmdResult {
    let t = parse_surface(surface)?;
    let models = enumerate_admissible_models(t);
    let chosen = if all_models { &models[..] } else { &models[..1] };
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, m) in chosen.iter().enumerate() {
        let index = image_index(m)?;
        writeln!(text, "type {t} model {i} L={}: index {index}", m.l_div()).unwrap();
        let mut row = model_json(i, m);
        row["image_index"] = json!(index);
        rows.push(row);
    }
    Ok(Report::ok(text, json!({"type": t.id(), "models": rows})))
}

fn cmd_factor(surface: &str, class: &str, ab: bool) -> CmdResult {
    let t = parse_surface(surface)?;
    let v = class_arg(class)?;
    let w = factor_point_image(t, &v)?;
    let image = w.point_image();
    let ok = image == v;
    let mut text = String::new();
    writeln!(text, "{w}").unwrap();
    writeln!(
        text,
        "check: compose(w)(P4) = {image} {}",
        if ok { "ok" } else { "MISMATCH" }
    )
    .unwrap();
    if ab {
        writeln!(text, "{}", format_class_ab(t, &v)).unwrap();
    }
    let json = json!({
        "type": t.id(),
        "class": format_class(&v),
        "coords": v.coords().iter().map(int).collect::<Vec<_>>(),
        "word": w.to_string(),
        "length": w.len(),
        "verified": ok,
    });
    Ok(Report {
        code: if ok { EXIT_OK } else { EXIT_FALSE },
        text,
        json,
    })
}

fn cmd_decompose(surface: &str, matrix: &[String]) -> CmdResult {
    let t = parse_surface(surface)?;
    let m = matrix_arg(matrix)?;
    let d = decompose(t, &m)?;
    let in_image = d.residual == UIsometry::Id;
    let text = format!(
        "word: {}\nresidual={}\nin_image={in_image}\n",
        d.word, d.residual
    );
    let json = json!({
        "type": t.id(),
        "word": d.word.to_string(),
        "residual": d.residual.tag(),
        "in_image": in_image,
    });
    Ok(Report::ok(text, json))
}

fn cmd_verify(surface: &str, word: &str, claim: &[String]) -> CmdResult {
    let t = parse_surface(surface)?;
    let w = parse_word_inner(t, word)?;
    let ints = integers_arg(claim)?;
    let claim = match ints.len() {
        4 => Claim::Class(NumClass::from_coords(ints.try_into().expect("length 4"))),
        16 => Claim::Matrix(Mat4::from_row_major(&ints).expect("length 16")),
        n => return Err(Failure::usage(format!("claim needs 4 or 16 integers, got {n}"))),
    };
    let ok = verify_word(&w, &claim);
    let (kind, actual) = match &claim {
        Claim::Class(_) => ("class", format_class(&w.point_image())),
        Claim::Matrix(_) => ("matrix", w.compose().matrix().to_string()),
    };
    let text = format!("{}\n", if ok { "match" } else { "mismatch" });
    let json = json!({
        "type": t.id(),
        "word": w.to_string(),
        "claim": kind,
        "match": ok,
        "actual": actual,
    });
    Ok(Report {
        code: if ok { EXIT_OK } else { EXIT_FALSE },
        text,
        json,
    })
}
