//! The `tropfan` command line.
//!
//! Exit codes: 0 success, 1 point in support, 2 input error, 3 enumeration
//! flagged inexhaustive (results are still printed).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::{Fan1D, GenMatrix};
use crate::homsearch::{
    enumerate_homs, enumerate_morphisms, ColumnAssignment, ConeRecord, EnumOptions, HomEnumeration, HomFamily,
    MorphismEnumeration, Slot,
};
use crate::json;
use crate::lattice::{IntMatrix, Lattice};
use crate::tropoly::{compare_on_space, first_ray_difference, parse_poly};
use crate::witness::{in_congruence_variety, verify_witness, Membership};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IN_SUPPORT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INEXHAUSTIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tropfan", version, about = "Exact computations with 1-dimensional tropical fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a fan file and report its rays and balancing.
    Check { fan: PathBuf },
    /// Print the weighted evaluation map of a fan as a JSON matrix.
    Evalmap { fan: PathBuf },
    /// Enumerate homomorphisms between Laurent-generated subsemirings.
    Homs {
        /// Generator matrix (JSON list of rows) or fan file.
        source: PathBuf,
        /// `full:s`, a generator matrix or a fan file.
        target: String,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Enumerate morphisms from one fan to another.
    Morphisms {
        from: PathBuf,
        to: PathBuf,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Certify that a point lies outside the support of a fan.
    Witness {
        fan: PathBuf,
        /// Comma-separated rationals, e.g. `1,1/2,0`.
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether two polynomials define the same function.
    Polyeq {
        #[command(flatten)]
        domain: Domain,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Debug, Args)]
struct EnumArgs {
    /// List explicit members with entries bounded by N; completes cone records.
    #[arg(long, value_name = "N")]
    expand: Option<BigInt>,
    /// Worker threads.
    #[arg(long, value_name = "K", default_value_t = 1)]
    jobs: usize,
}

impl EnumArgs {
    fn options(&self) -> EnumOptions {
        EnumOptions { bound: self.expand.clone(), jobs: self.jobs }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Domain {
    /// Compare on the support of this fan.
    #[arg(long, value_name = "FAN")]
    on_fan: Option<PathBuf>,
    /// Compare on all of R^n.
    #[arg(long, value_name = "N")]
    on_space: Option<usize>,
}

/// Runs the command line on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check { fan } => {
            let fan = read_fan(&fan)?;
            let mut report = fan.to_value();
            report["balanced"] = Value::Bool(fan.is_balanced());
            emit(out, &report)?;
            Ok(EXIT_OK)
        }
        Command::Evalmap { fan } => {
            emit(out, &json::matrix_value(read_fan(&fan)?.weighted_eval_map().matrix()))?;
            Ok(EXIT_OK)
        }
        Command::Homs { source, target, enumeration } => {
            let mf = read_generators(&source)?;
            let (s, lattice) = read_target(&target)?;
            let result = enumerate_homs(&mf, s, lattice.as_ref(), &enumeration.options())?;
            write_homs(out, &result, enumeration.expand.as_ref())?;
            Ok(if result.is_exhaustive() { EXIT_OK } else { EXIT_INEXHAUSTIVE })
        }
        Command::Morphisms { from, to, enumeration } => {
            let y = read_fan(&from)?;
            let x = read_fan(&to)?;
            let result = enumerate_morphisms(&y, &x, &enumeration.options())?;
            for w in &result.warnings {
                writeln!(err, "warning: {w}").map_err(io_error)?;
            }
            write_morphisms(out, &result, enumeration.expand.as_ref())?;
            Ok(if result.is_exhaustive() { EXIT_OK } else { EXIT_INEXHAUSTIVE })
        }
        Command::Witness { fan, point } => {
            let fan = read_fan(&fan)?;
            let q = point.split(',').map(json::parse_rational).collect::<Result<Vec<_>>>()?;
            if q.len() != fan.ambient_dim() {
                return Err(Error::DimensionMismatch { expected: fan.ambient_dim(), found: q.len() });
            }
            let dirs = fan.directions();
            match in_congruence_variety(&q, &dirs)? {
                Membership::Inside => {
                    emit(out, &json!({ "result": "in-support" }))?;
                    Ok(EXIT_IN_SUPPORT)
                }
                Membership::Outside(w) => {
                    assert!(verify_witness(&w, &dirs), "constructed witness failed verification");
                    emit(out, &w.to_value())?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Polyeq { domain, f, g } => {
            let report = match (domain.on_fan, domain.on_space) {
                (Some(path), _) => {
                    let fan = read_fan(&path)?;
                    let n = fan.ambient_dim();
                    let dirs = fan.directions();
                    match first_ray_difference(&parse_poly(&f, n)?, &parse_poly(&g, n)?, &dirs)? {
                        None => json!({ "equal": true }),
                        Some(i) => json!({ "equal": false, "direction": json::int_array(&dirs[i]) }),
                    }
                }
                (None, Some(n)) => match compare_on_space(&parse_poly(&f, n)?, &parse_poly(&g, n)?)? {
                    None => json!({ "equal": true }),
                    Some(p) => json!({
                        "equal": false,
                        "point": p.iter().map(json::rational_string).collect::<Vec<_>>(),
                    }),
                },
                (None, None) => unreachable!("clap requires one domain"),
            };
            emit(out, &report)?;
            Ok(EXIT_OK)
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Input(format!("write failed: {e}"))
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{v}").map_err(io_error)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    json::parse(&text)
}

fn read_fan(path: &Path) -> Result<Fan1D> {
    Fan1D::from_value(&read_json(path)?)
}

/// A JSON matrix is taken as generator rows; a JSON object as a fan file.
fn generators_from(v: &Value) -> Result<GenMatrix> {
    if v.is_object() {
        Ok(Fan1D::from_value(v)?.weighted_eval_map())
    } else {
        Ok(GenMatrix::new(json::as_matrix(v, "generator matrix")?))
    }
}

fn read_generators(path: &Path) -> Result<GenMatrix> {
    generators_from(&read_json(path)?)
}

fn read_target(spec: &str) -> Result<(usize, Option<Lattice>)> {
    if let Some(s) = spec.strip_prefix("full:") {
        let s = s.parse().map_err(|_| Error::Input(format!("bad target size in {spec:?}")))?;
        return Ok((s, None));
    }
    let mg = read_generators(Path::new(spec))?;
    Ok((mg.labels(), Some(Lattice::from_generators(mg.matrix().clone()))))
}

fn assignment_value(a: &ColumnAssignment) -> Value {
    Value::Array(
        a.slots()
            .iter()
            .map(|s| match s {
                Slot::Zero => Value::Null,
                Slot::Source(i) => json!(i + 1),
            })
            .collect(),
    )
}

fn matrices(ms: &[IntMatrix]) -> Value {
    Value::Array(ms.iter().map(json::matrix_value).collect())
}

fn family_value(f: &HomFamily, expand: Option<&BigInt>) -> Value {
    let mut v = json!({
        "kind": "family",
        "assignment": assignment_value(&f.assignment),
        "base": json::matrix_value(&f.base),
        "modulus": json::int_value(&f.modulus),
    });
    if let Some(bound) = expand {
        v["members"] = matrices(&f.members_within(bound));
    }
    v
}

fn cone_value(c: &ConeRecord) -> Value {
    let mut v = json!({
        "kind": "cone",
        "assignment": assignment_value(&c.assignment),
        "rays": matrices(&c.rays),
    });
    match &c.members {
        None => v["flag"] = json!("inexhaustive"),
        Some(ms) => {
            v["flag"] = json!("completed");
            v["members"] = matrices(ms);
        }
    }
    v
}

fn write_homs(out: &mut dyn Write, e: &HomEnumeration, expand: Option<&BigInt>) -> Result<()> {
    emit(out, &json!({ "kind": "zero" }))?;
    for f in &e.families {
        emit(out, &family_value(f, expand))?;
    }
    for c in &e.cones {
        emit(out, &cone_value(c))?;
    }
    Ok(())
}

fn write_morphisms(out: &mut dyn Write, e: &MorphismEnumeration, expand: Option<&BigInt>) -> Result<()> {
    let t_values = |ms: &[IntMatrix]| -> Result<Value> {
        Ok(Value::Array(ms.iter().map(|m| e.t_for(m).map(|t| json::matrix_value(&t))).collect::<Result<_>>()?))
    };
    emit(out, &json!({ "kind": "zero" }))?;
    for f in &e.families {
        let mut v = family_value(&f.homs, expand);
        v["base_T"] = json::matrix_value(&f.base_t);
        if let Some(bound) = expand {
            v["members_T"] = t_values(&f.homs.members_within(bound))?;
        }
        emit(out, &v)?;
    }
    for c in &e.homs.cones {
        let mut v = cone_value(c);
        if let Some(ms) = &c.members {
            v["members_T"] = t_values(ms)?;
        }
        emit(out, &v)?;
    }
    Ok(())
}
