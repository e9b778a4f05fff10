//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with what should go to stdout and stderr, so the binary
//! is a thin wrapper.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::format_abelian;
use crate::diagrams::VirtualDiagram;
use crate::groups::{
    normal_form, operator_presentation, rs_kernel, Action, Gamma, Presentation,
};
use crate::invariants::{
    almost_classical_obstruction, branched_cover_homology, diagram_alexander, alexander_polynomial,
    virtual_polys, wada, AbelianRecord, InvariantError, NumberingRecord, PolyRecord, WadaRecord,
};
use crate::representations::{check_rep, product_rep, Abelianization, MatrixRep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "vknot", version, about = "Alexander-type invariants of classical and virtual knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Untwisted Alexander polynomial of a Gauss code or a presentation.
    Alexander {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Wada's twisted invariant of a deficiency-one presentation.
    Twisted {
        input: PathBuf,
        /// Representation file (the abelianization factor is added automatically).
        #[arg(long)]
        rep: PathBuf,
        /// Generator whose columns are deleted.
        #[arg(long)]
        delete: String,
    },
    /// Virtual Alexander polynomial in u, v and the almost-classical test.
    Virtual {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Optional representation of the extended group.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Alexander numbering of a Gauss code, integral (0) or mod 2.
    Numbering {
        input: PathBuf,
        #[arg(long = "mod", default_value_t = 0)]
        modulus: u32,
    },
    /// First homology of the r-fold cyclic branched cover.
    Cover {
        input: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// Rewrite a presentation over its abelianization, or give the
    /// Reidemeister-Schreier kernel of `--chi`.
    Rewrite {
        input: PathBuf,
        /// Cyclic operator group of this order instead of Z.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Homomorphism onto Z, e.g. `x=1,a=0,d=0`.
        #[arg(long)]
        chi: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Alexander { input, index } => alexander(input, *index, cli.format),
        Command::Twisted { input, rep, delete } => twisted(input, rep, delete, cli.format),
        Command::Virtual { input, index, rep } => virtual_cmd(input, *index, rep.as_deref(), cli.format),
        Command::Numbering { input, modulus } => numbering(input, *modulus, cli.format),
        Command::Cover { input, degree } => cover(input, *degree, cli.format),
        Command::Rewrite { input, modulus, chi } => rewrite(input, *modulus, chi.as_deref()),
    }
}

enum Input {
    Diagram(VirtualDiagram),
    Presentation(Presentation),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// A file whose first non-comment token is `gens:` is a presentation,
/// anything else a Gauss code.
fn load(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let is_pres = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("gens:"));
    if is_pres {
        Presentation::parse(&text).map(Input::Presentation).map_err(|e| located(path, e))
    } else {
        VirtualDiagram::parse(&text).map(Input::Diagram).map_err(|e| located(path, e))
    }
}

fn load_diagram(path: &Path) -> Result<VirtualDiagram, CliError> {
    match load(path)? {
        Input::Diagram(d) => Ok(d),
        Input::Presentation(_) => Err(CliError::Input(format!("{}: expected a Gauss code", path.display()))),
    }
}

fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    match load(path)? {
        Input::Presentation(p) => Ok(p),
        Input::Diagram(_) => Err(CliError::Input(format!("{}: expected a presentation", path.display()))),
    }
}

fn load_rep(path: &Path) -> Result<MatrixRep, CliError> {
    MatrixRep::parse(&read(path)?).map_err(|e| located(path, e))
}

fn provenance(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize") + "\n"
}

const WIRTINGER_CONVENTION: &str = "wirtinger: minors of size N-1-i of the N x N Fox matrix";
const PRESENTATION_CONVENTION: &str = "presentation: minors of size R-i of the R x G Fox matrix";

fn alexander(input: &Path, index: usize, format: Format) -> Result<String, CliError> {
    let (poly, convention) = match load(input)? {
        Input::Diagram(d) => (diagram_alexander(&d, index)?, WIRTINGER_CONVENTION),
        Input::Presentation(p) => {
            let ab = Abelianization::infer(&p, "t").map_err(|e| CliError::Precondition(e.to_string()))?;
            (alexander_polynomial(&p, &ab, index, false)?, PRESENTATION_CONVENTION)
        }
    };
    let rec = PolyRecord::new(
        "alexander",
        &poly,
        provenance(&[
            ("input", input.display().to_string()),
            ("index", index.to_string()),
            ("convention", convention.to_string()),
        ]),
    );
    Ok(match format {
        Format::Json => json(&rec),
        Format::Text => format!("{poly}\n# Delta_{index}; {convention}\n"),
    })
}

fn twisted(input: &Path, rep_path: &Path, delete: &str, format: Format) -> Result<String, CliError> {
    let p = load_presentation(input)?;
    let p2 = load_rep(rep_path)?;
    for g in p.gens() {
        if p2.image(g).is_err() {
            return Err(CliError::Precondition(format!("representation has no image for generator '{g}'")));
        }
    }
    match check_rep(&p2, &p).map_err(|e| CliError::Precondition(e.to_string()))? {
        Ok(()) => {}
        Err(f) => return Err(CliError::Precondition(format!("not a representation: {f}"))),
    }
    let ab = Abelianization::infer(&p, "t").map_err(|e| CliError::Precondition(e.to_string()))?;
    let rep = product_rep(&ab, &p2).map_err(|e| CliError::Precondition(e.to_string()))?;
    let w = wada(&p, &rep, delete)?;
    let rec = WadaRecord::new(
        &w,
        provenance(&[
            ("input", input.display().to_string()),
            ("rep", rep_path.display().to_string()),
            ("delete", delete.to_string()),
        ]),
    );
    Ok(match format {
        Format::Json => json(&rec),
        Format::Text => {
            let mut s = format!("numerator: {}\ndenominator: {}\n", w.numerator, w.denominator);
            match &w.quotient {
                Some(q) => s += &format!("quotient: {q}\n"),
                None => s += "quotient: not exact\n",
            }
            s
        }
    })
}

fn virtual_cmd(input: &Path, index: usize, rep: Option<&Path>, format: Format) -> Result<String, CliError> {
    let d = load_diagram(input)?;
    let p2 = rep.map(load_rep).transpose()?;
    if let Some(r) = &p2 {
        let ext = d.extended_presentation();
        if let Err(f) = check_rep(r, &ext).map_err(|e| CliError::Precondition(e.to_string()))? {
            return Err(CliError::Precondition(format!("not a representation of the extended group: {f}")));
        }
    }
    let q = virtual_polys(&d, index, p2.as_ref())?;
    let obstructed = almost_classical_obstruction(&q);
    let mut pairs = vec![("input", input.display().to_string()), ("index", index.to_string())];
    if let Some(r) = rep {
        pairs.push(("rep", r.display().to_string()));
    }
    let mut rec = PolyRecord::new("virtual_alexander", &q, provenance(&pairs));
    rec.obstructed = Some(obstructed);
    Ok(match format {
        Format::Json => json(&rec),
        Format::Text => {
            let verdict = if obstructed { "obstructed (not almost classical)" } else { "not obstructed" };
            format!("{q}\nverdict: {verdict}\n")
        }
    })
}

fn numbering(input: &Path, modulus: u32, format: Format) -> Result<String, CliError> {
    if modulus != 0 && modulus != 2 {
        return Err(CliError::Precondition(format!("--mod must be 0 or 2, got {modulus}")));
    }
    let d = load_diagram(input)?;
    let result = d.alexander_numbering(modulus);
    let labels = result.as_ref().ok().map(|n| {
        n.labels.iter().enumerate().map(|(e, &l)| (d.edge_name(e), l)).collect::<BTreeMap<_, _>>()
    });
    let rec = NumberingRecord {
        invariant: "alexander_numbering".into(),
        modulus,
        labels,
        provenance: provenance(&[("input", input.display().to_string())]),
    };
    Ok(match format {
        Format::Json => json(&rec),
        Format::Text => match result {
            Ok(n) => format!("{n}\n"),
            Err(c) => format!("none exists\n# {c}\n"),
        },
    })
}

fn cover(input: &Path, degree: u64, format: Format) -> Result<String, CliError> {
    if degree < 2 {
        return Err(CliError::Precondition(format!("--degree must be at least 2, got {degree}")));
    }
    let p = match load(input)? {
        Input::Diagram(d) => d.wirtinger(),
        Input::Presentation(p) => p,
    };
    let factors = branched_cover_homology(&p, degree)?;
    let rec = AbelianRecord::new(
        "branched_cover_homology",
        &factors,
        provenance(&[("input", input.display().to_string()), ("degree", degree.to_string())]),
    );
    Ok(match format {
        Format::Json => json(&rec),
        Format::Text => format!("{}\n", format_abelian(&factors)),
    })
}

fn parse_chi(src: &str) -> Result<BTreeMap<String, i64>, CliError> {
    src.split(',')
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("--chi: expected name=value, got '{item}'")))?;
            let v = v.trim().parse().map_err(|_| CliError::Input(format!("--chi: bad integer in '{item}'")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn rewrite(input: &Path, modulus: Option<u64>, chi: Option<&str>) -> Result<String, CliError> {
    let p = load_presentation(input)?;
    let pre = |e: crate::groups::GroupError| CliError::Precondition(e.to_string());
    if let Some(chi) = chi {
        if modulus.is_some() {
            return Err(CliError::Input("--chi and --mod cannot be combined".into()));
        }
        let k = rs_kernel(&p, &parse_chi(chi)?).map_err(pre)?;
        return Ok(format!("{k}\n"));
    }
    let ab = Abelianization::infer(&p, "t").map_err(|e| CliError::Precondition(e.to_string()))?;
    let gamma = match modulus {
        None | Some(0) => Gamma::free(&["t"]),
        Some(r) => Gamma::cyclic("t", r).map_err(pre)?,
    };
    let images: Vec<(&str, i64)> = p.gens().iter().map(|g| (g.as_str(), ab.image(g).unwrap()[0])).collect();
    let action = Action::scalar(gamma, &images).map_err(pre)?;
    let op = operator_presentation(&p, &action).map_err(pre)?;
    let mut out = format!("{op}\n");
    for (i, r) in op.rels().iter().enumerate() {
        let nf = normal_form(r, &action).map_err(pre)?;
        let segs: Vec<String> =
            nf.iter().map(|s| format!("({}){}", s.word, action.gamma.fmt_coord(&s.coord))).collect();
        out += &format!("# normal form of relator {}: {}\n", i + 1, if segs.is_empty() { "1".into() } else { segs.join(" ") });
    }
    Ok(out)
}
