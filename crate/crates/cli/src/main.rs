mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use report::{RunReport, Status};
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use wzpi::algebra::{fmt_rat, BigRat};
use wzpi::catalog::{
    builtin_file, builtin_names, load_builtin, parse_identities, serialize_identity, IdentityFile,
};
use wzpi::gosper::{synthesize_certificate, GosperStatus};
use wzpi::numeric::{self, NumericConfig, NumericError};
use wzpi::wz::{self, Kind, WZIdentity};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wzpi",
    version,
    about = "Verify and synthesize WZ certificates for Ramanujan-type 1/pi series"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in identities
    List,
    /// Check certificates and exact sums
    Verify(VerifyArgs),
    /// Exact left and right sides at one n
    Sum {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: u64,
    },
    /// Synthesize a certificate with Gosper's algorithm
    Synth {
        #[arg(long)]
        id: String,
        /// Write a repaired .identity file (default `<id>.identity`)
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        emit: Option<String>,
    },
    /// Compare both sides at the Carlson point in floating point
    Numeric {
        #[arg(long)]
        id: String,
        /// Rational value of n, e.g. -1/2; defaults to -1/(2a)
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Estimate pi from a 1/pi series
    Pi {
        #[arg(long, value_enum)]
        series: PiSeries,
        /// Sum exactly this many terms instead of running to tolerance
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with_all = ["file", "all"])]
    id: Option<String>,
    #[arg(long, conflicts_with = "all")]
    file: Option<PathBuf>,
    /// Every built-in identity
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long)]
    json: bool,
    /// Report failing printed certificates of flagged identities as skipped
    #[arg(long)]
    allow_errata: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PiSeries {
    Ramanujan,
    R1103,
}

impl PiSeries {
    fn name(self) -> &'static str {
        match self {
            PiSeries::Ramanujan => "ramanujan",
            PiSeries::R1103 => "r1103",
        }
    }
}

/// Failure that ends the command with a message on stderr.
struct Abort(u8, String);

fn usage(msg: impl Into<String>) -> Abort {
    Abort(EXIT_USAGE, msg.into())
}

impl From<NumericError> for Abort {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::NoConvergence { .. } => Abort(EXIT_NO_CONVERGENCE, e.to_string()),
            NumericError::InvalidConfig(_)
            | NumericError::NotPiSeries(_)
            | NumericError::Catalog(_) => usage(e.to_string()),
            _ => Abort(EXIT_FAIL, e.to_string()),
        }
    }
}

fn builtin(name: &str) -> Result<WZIdentity, Abort> {
    load_builtin(name).map_err(|e| usage(e.to_string()))
}

fn exit_for(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_FAIL
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::List => {
            cmd_list();
            Ok(0)
        }
        Cmd::Verify(a) => cmd_verify(&a),
        Cmd::Sum { id, n } => cmd_sum(&id, n),
        Cmd::Synth { id, emit } => cmd_synth(&id, emit.as_deref()),
        Cmd::Numeric {
            id,
            point,
            tol,
            json,
        } => cmd_numeric(&id, point.as_deref(), tol, json),
        Cmd::Pi { series, terms, tol } => cmd_pi(series, terms, tol),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Abort(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn cmd_list() {
    for name in builtin_names() {
        let f = builtin_file(name).expect("builtins parse");
        let a = f.carlson_a.map_or("-".to_string(), |a| a.to_string());
        println!(
            "{} {} carlson_a={} certificate={} erratum={}",
            name,
            f.kind.as_str(),
            a,
            if f.cert_num.is_some() { "yes" } else { "no" },
            f.erratum
        );
    }
}

fn verify_one(id: &WZIdentity, n_max: u64, allow_errata: bool) -> RunReport {
    let mut r = RunReport::new(&id.name);
    if id.kind == Kind::Numeric {
        r.run("series", || match id.inv_pi_multiple {
            Some(m) => match numeric::series_numeric(
                id,
                &BigRat::from_integer(0.into()),
                &NumericConfig::default(),
            ) {
                Ok(v) => {
                    let err = (m as f64 / v - PI).abs();
                    (
                        Status::from_bool(err < 1e-9),
                        format!("pi estimate off by {err:.1e}"),
                    )
                }
                Err(e) => (Status::Fail, e.to_string()),
            },
            None => (Status::Skip, "no 1/pi multiple given".into()),
        });
        for name in ["certificate", "base_case", "exact_sums"] {
            r.run(name, || (Status::Skip, "numeric series, no n".into()));
        }
        return r;
    }

    r.run("certificate", || {
        let Some(cert) = &id.certificate else {
            return (Status::Skip, "no printed certificate; see `synth`".into());
        };
        let residual = wz::wz_residual(id, cert);
        let boundary = wz::boundary_vanishes(cert);
        let poles = wz::lattice_poles(id, cert, n_max);
        let mut detail = match (residual.is_zero(), boundary) {
            (true, true) => "WZ equation holds exactly, R(n, 0) = 0".to_string(),
            (true, false) => "WZ equation holds but R(n, 0) does not vanish".to_string(),
            (false, _) => format!(
                "nonzero residual with {} terms, lowest: {}",
                residual.len(),
                residual.primitive().lowest_terms(3)
            ),
        };
        if !poles.is_empty() {
            detail += &format!(
                "; denominator vanishes at {} lattice point(s), first {:?}",
                poles.len(),
                poles[0]
            );
        }
        let ok = residual.is_zero() && boundary;
        match (ok, id.erratum, allow_errata) {
            (true, ..) => (Status::Pass, detail),
            (false, true, true) => (Status::Skip, format!("known erratum: {detail}")),
            (false, true, false) => (Status::Fail, format!("known erratum: {detail}")),
            (false, false, _) => (Status::Fail, detail),
        }
    });
    r.run("base_case", || {
        let ok = wz::check_base_case(id);
        (
            Status::from_bool(ok),
            if ok {
                "sum at n = 0 is 1"
            } else {
                "sum at n = 0 is not 1"
            }
            .into(),
        )
    });
    r.run("exact_sums", || match wz::verify_exact_sums(id, n_max) {
        Ok(s) => match s.first_failure {
            None => (Status::Pass, format!("exact for n = 0..={n_max}")),
            Some(m) => (Status::Fail, m.to_string()),
        },
        Err(e) => (Status::Fail, e.to_string()),
    });
    r
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Abort> {
    let (label, ids): (String, Vec<WZIdentity>) = if a.all {
        (
            "all".into(),
            builtin_names()
                .map(|n| load_builtin(n).expect("builtins parse"))
                .collect(),
        )
    } else if let Some(name) = &a.id {
        (name.clone(), vec![builtin(name)?])
    } else if let Some(path) = &a.file {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let files =
            parse_identities(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        if files.is_empty() {
            return Err(usage(format!("{}: no [identity] section", path.display())));
        }
        let ids: Vec<WZIdentity> = files.iter().map(IdentityFile::to_identity).collect();
        let label = if ids.len() == 1 {
            ids[0].name.clone()
        } else {
            path.display().to_string()
        };
        (label, ids)
    } else {
        return Err(usage("one of --id, --file or --all is required"));
    };

    let reports: Vec<RunReport> = ids
        .par_iter()
        .map(|id| verify_one(id, a.n_max, a.allow_errata))
        .collect();
    let ok = reports.iter().all(RunReport::passed);
    if a.json {
        let doc = if reports.len() == 1 {
            reports.into_iter().next().unwrap()
        } else {
            RunReport::merge(&label, reports)
        };
        println!("{}", doc.to_json());
    } else {
        for r in &reports {
            print!("{}", r.render());
        }
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.identity.as_str())
            .collect();
        if failed.is_empty() {
            println!("result: pass");
        } else {
            println!("result: fail ({})", failed.join(", "));
        }
    }
    Ok(exit_for(ok))
}

fn cmd_sum(name: &str, n: u64) -> Result<u8, Abort> {
    let id = builtin(name)?;
    if id.kind != Kind::Wz {
        return Err(usage(format!(
            "`{name}` is a numeric series without a parameter n"
        )));
    }
    let (lhs, rhs) = id
        .exact_sum(n)
        .map_err(|e| Abort(EXIT_FAIL, e.to_string()))?;
    let equal = lhs == rhs;
    println!(
        "LHS = {}, RHS = {}, {}",
        fmt_rat(&lhs),
        fmt_rat(&rhs),
        if equal { "equal" } else { "NOT equal" }
    );
    Ok(exit_for(equal))
}

fn cmd_synth(name: &str, emit: Option<&str>) -> Result<u8, Abort> {
    let mut id = builtin(name)?;
    if id.kind != Kind::Wz {
        return Err(usage(format!(
            "`{name}` is a numeric series; there is nothing to synthesize"
        )));
    }
    let g = synthesize_certificate(&id).map_err(|e| Abort(EXIT_FAIL, e.to_string()))?;
    let Some(cert) = g.certificate.filter(|_| g.status == GosperStatus::Summable) else {
        println!(
            "{name}: not Gosper-summable (degree bound {})",
            g.degree_bound_used
        );
        return Ok(EXIT_FAIL);
    };
    println!(
        "{name}: summable, degree bound {}, dispersion set {:?}",
        g.degree_bound_used, g.dispersion_set
    );
    println!("cert_num = \"{}\"", cert.num());
    println!("cert_den = \"{}\"", cert.den());
    let report = wz::verify_with_certificate(&id, &cert, wz::DEFAULT_N_MAX)
        .map_err(|e| Abort(EXIT_FAIL, e.to_string()))?;
    if report.passed() {
        println!(
            "verified: WZ equation, R(n, 0) = 0, exact sums for n = 0..={}",
            wz::DEFAULT_N_MAX
        );
    } else {
        println!(
            "verification FAILED: {}",
            report.failure_detail.as_deref().unwrap_or_default()
        );
    }
    match &id.certificate {
        Some(printed) if printed.equals(&cert) => println!("equal to the printed certificate"),
        Some(_) => println!("differs from the printed certificate"),
        None => println!("no printed certificate to compare"),
    }
    if let Some(path) = emit {
        let path = if path.is_empty() {
            format!("{name}.identity")
        } else {
            path.to_string()
        };
        id.certificate = Some(cert);
        let mut file = IdentityFile::from_identity(&id);
        file.erratum = false;
        std::fs::write(&path, serialize_identity(&file))
            .map_err(|e| Abort(EXIT_FAIL, format!("{path}: {e}")))?;
        println!("wrote {path}");
    }
    Ok(exit_for(report.passed()))
}

fn cmd_numeric(name: &str, point: Option<&str>, tol: f64, json: bool) -> Result<u8, Abort> {
    let id = builtin(name)?;
    if id.kind != Kind::Wz {
        return Err(usage(format!("`{name}` has no parameter n; use `pi`")));
    }
    let carlson = id.carlson_point();
    let t = match point {
        Some(s) => BigRat::from_str(s.trim()).map_err(|_| usage(format!("bad rational `{s}`")))?,
        None => carlson
            .clone()
            .ok_or_else(|| usage(format!("`{name}` has no carlson_a; pass --point")))?,
    };
    let cfg = NumericConfig {
        target_abs_tol: tol * 0.1,
        ..NumericConfig::default()
    };
    let series = numeric::series_numeric(&id, &t, &cfg)?;
    let rhs = numeric::rhs_numeric(&id.rhs, &t)?;

    let mut r = RunReport::new(name);
    r.run("series_vs_rhs", || {
        let d = (series - rhs).abs();
        (
            Status::from_bool(d < tol),
            format!(
                "n = {}: series = {series:.15}, rhs = {rhs:.15}, |difference| = {d:.1e}",
                fmt_rat(&t)
            ),
        )
    });
    let at_carlson = carlson.as_ref() == Some(&t);
    r.run("rhs_vs_two_over_pi", || {
        let d = (rhs - 2.0 / PI).abs();
        if at_carlson {
            (
                Status::from_bool(d < tol),
                format!("|rhs - 2/pi| = {d:.1e}"),
            )
        } else {
            (
                Status::Skip,
                format!("not the Carlson point; |rhs - 2/pi| = {d:.1e}"),
            )
        }
    });
    if name == "theorem6" && at_carlson {
        r.run("cos_fifths_form", || {
            let form = numeric::cos_fifths_form();
            let d = (rhs - form).abs();
            let trig = numeric::trig_identity_check();
            (
                Status::from_bool(d < 1e-12 && trig.residual < 1e-15),
                format!(
                    "sqrt(5)/(pi (cos(pi/5) + cos(2 pi/5))) = {form:.15}, |rhs - form| = {d:.1e}, \
                     |cos(pi/5) + cos(2 pi/5) - sqrt(5)/2| = {:.1e}",
                    trig.residual
                ),
            )
        });
    }
    if json {
        println!("{}", r.to_json());
    } else {
        print!("{}", r.render());
    }
    Ok(exit_for(r.passed()))
}

fn cmd_pi(series: PiSeries, terms: Option<usize>, tol: Option<f64>) -> Result<u8, Abort> {
    let name = series.name();
    let estimate = match terms {
        Some(0) => return Err(usage("--terms must be at least 1")),
        Some(count) => numeric::pi_from_partial(name, count)?,
        None => {
            let cfg = NumericConfig {
                target_abs_tol: tol.unwrap_or(1e-10),
                ..NumericConfig::default()
            };
            numeric::pi_from_series(name, &cfg)?
        }
    };
    println!(
        "pi estimate = {estimate:.17}, |estimate - pi| = {:.3e}",
        (estimate - PI).abs()
    );
    Ok(0)
}
