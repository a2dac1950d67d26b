use std::fmt::Write as _;
use std::io::Write;

use frobsq::formula::{frobenius_closed_form, frobenius_via_max_r, FrobeniusResult};
use frobsq::scan::{empirical_max_r_profile, scan_range, ScanConfig, ScanReport, CSV_HEADER};
use frobsq::semigroup::{frobenius_bruteforce, shifted_square_generators_capped, GeneratorSet};
use frobsq::squares::{
    classify, factorize, is_perfect_square, is_sum_of_three_squares, is_sum_of_two_squares,
    legendre_form, two_square_witness, IotaTable,
};
use frobsq::Error;
use serde_json::json;

use crate::args::{CliConfig, Command, Format, MethodArg, SemigroupArgs};
use crate::{CliError, Limits, Output};

type CmdResult = Result<Output, CliError>;

fn data(bytes: impl Into<Vec<u8>>) -> CmdResult {
    Ok(Output {
        data: bytes.into(),
        disagreement: false,
    })
}

fn json_bytes(value: &impl serde::Serialize) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("json serialization of plain data");
    v.push(b'\n');
    v
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `key: value` lines.
#[derive(Default)]
struct Plain(String);

impl Plain {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.0, "{key}: {value}");
        self
    }
}

pub(crate) fn execute(config: &CliConfig, limits: Limits, stderr: &mut dyn Write) -> CmdResult {
    let format = config.format.unwrap_or(match config.command {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Plain,
    });
    match &config.command {
        Command::Iota { n } => iota_cmd(*n, format, limits, stderr),
        Command::Classify { n } => classify_cmd(*n, format),
        Command::Frobenius { a, method } => frobenius_cmd(*a, *method, format, limits, stderr),
        Command::Apery { semigroup, modulus } => apery_cmd(semigroup, *modulus, format, limits),
        Command::Gaps { semigroup } => gaps_cmd(semigroup, format, limits),
        Command::Scan {
            from,
            to,
            step,
            mod8,
            oracle,
            jobs,
        } => {
            let mut cfg = ScanConfig::new(*from, *to)
                .step(*step)
                .with_oracle(*oracle)
                .oracle_cap(limits.oracle_cap);
            if let Some(residues) = mod8 {
                cfg = cfg.residues(residues.iter().copied());
            }
            scan_cmd(&cfg, *jobs, format, stderr)
        }
        Command::Profile { from, to } => profile_cmd(*from, *to, format),
    }
}

fn iota_cmd(n: u64, format: Format, limits: Limits, stderr: &mut dyn Write) -> CmdResult {
    let class = classify(n)?;
    let witness = if n <= limits.iota_cap {
        Some(IotaTable::build_capped(n, limits.iota_cap)?.decompose(n)?)
    } else {
        let _ = writeln!(
            stderr,
            "note: n exceeds the iota oracle cap ({}); no witness produced",
            limits.iota_cap
        );
        None
    };
    let value = class.iota();
    Ok(Output {
        data: match format {
            Format::Plain => {
                let mut p = Plain::default();
                p.line("n", n)
                    .line("iota", value)
                    .line("class", class)
                    .line("witness", opt(witness.as_ref()));
                p.0.into_bytes()
            }
            Format::Json => json_bytes(&json!({
                "n": n,
                "iota": value,
                "class": class,
                "witness": witness.as_ref().map(|w| &w.parts),
            })),
            Format::Csv => format!(
                "n,iota,class,witness\n{n},{value},{class},{}\n",
                opt(witness.as_ref())
            )
            .into_bytes(),
        },
        // The table is an independent route; a shorter or longer witness
        // means the arithmetic classification is wrong.
        disagreement: witness.is_some_and(|w| w.parts.len() != value as usize),
    })
}

fn classify_cmd(n: u64, format: Format) -> CmdResult {
    let class = classify(n)?;
    let factorization = factorize(n)?;
    let square = is_perfect_square(n)?;
    let two = is_sum_of_two_squares(n)?;
    let two_witness = two_square_witness(n)?;
    let three = is_sum_of_three_squares(n)?;
    let form = legendre_form(n);
    let form_text = form.map(|f| format!("4^{}*(8*{}+7)", f.e, f.m));
    match format {
        Format::Plain => {
            let mut p = Plain::default();
            p.line("n", n)
                .line("class", class)
                .line("type", class.type_number())
                .line("iota", class.iota())
                .line("factorization", &factorization)
                .line("perfect_square", square)
                .line("two_squares", two)
                .line("two_square_witness", opt(two_witness.map(|(x, y)| format!("{x}^2+{y}^2"))))
                .line("legendre_form", opt(form_text.as_ref()))
                .line("three_squares", three);
            data(p.0)
        }
        Format::Json => data(json_bytes(&json!({
            "n": n,
            "class": class,
            "type": class.type_number(),
            "iota": class.iota(),
            "factorization": factorization.factors,
            "perfect_square": square,
            "two_squares": two,
            "two_square_witness": two_witness,
            "legendre_form": form,
            "three_squares": three,
        }))),
        Format::Csv => data(format!(
            "n,class,type,iota,factorization,perfect_square,two_squares,legendre_form,three_squares\n\
             {n},{class},{},{},{factorization},{square},{two},{},{three}\n",
            class.type_number(),
            class.iota(),
            opt(form_text.as_ref()),
        )),
    }
}

fn frobenius_cmd(
    a: u64,
    method: MethodArg,
    format: Format,
    limits: Limits,
    stderr: &mut dyn Write,
) -> CmdResult {
    let oracle = || -> Result<FrobeniusResult, Error> {
        Ok(frobenius_bruteforce(&shifted_square_generators_capped(
            a,
            limits.oracle_cap,
        )?))
    };
    let results: Vec<FrobeniusResult> = match method {
        MethodArg::Closed => vec![frobenius_closed_form(a)?],
        MethodArg::Maxr => vec![frobenius_via_max_r(a)?],
        MethodArg::Oracle => vec![oracle()?],
        MethodArg::All => {
            let mut out = Vec::new();
            for (name, attempt) in [
                ("closed", frobenius_closed_form(a)),
                ("maxr", frobenius_via_max_r(a)),
            ] {
                match attempt {
                    Ok(r) => out.push(r),
                    Err(e @ (Error::Domain(_) | Error::HypothesisFailure { .. })) => {
                        let _ = writeln!(stderr, "note: {name} skipped: {e}");
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            out.push(oracle()?);
            out
        }
    };
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    let show_agree = method == MethodArg::All;

    let bytes = match format {
        Format::Plain => {
            let mut p = Plain::default();
            p.line("a", a);
            for r in &results {
                p.line(r.method.label(), r.value);
                if let Some(b) = r.branch {
                    p.line("branch", b);
                }
                if let Some(w) = r.witness_r {
                    p.line("witness_r", w);
                }
            }
            if show_agree {
                p.line("agree", agree);
            }
            p.0.into_bytes()
        }
        Format::Json => {
            let mut v = json!({ "a": a, "results": results });
            if show_agree {
                v["agree"] = json!(agree);
            }
            json_bytes(&v)
        }
        Format::Csv => {
            let mut s = String::from("a,method,value,witness_r,branch\n");
            for r in &results {
                let _ = writeln!(
                    s,
                    "{a},{},{},{},{}",
                    r.method,
                    r.value,
                    opt(r.witness_r),
                    opt(r.branch)
                );
            }
            s.into_bytes()
        }
    };
    Ok(Output {
        data: bytes,
        disagreement: !agree,
    })
}

fn semigroup_from(args: &SemigroupArgs, limits: Limits) -> Result<GeneratorSet, CliError> {
    match (&args.a, &args.generators) {
        (Some(a), None) => Ok(shifted_square_generators_capped(*a, limits.oracle_cap)?),
        (None, Some(g)) => Ok(GeneratorSet::new(g.iter().copied())?),
        _ => Err(CliError::Usage(
            "give exactly one of --a or --generators".into(),
        )),
    }
}

fn apery_cmd(
    args: &SemigroupArgs,
    modulus: Option<u64>,
    format: Format,
    limits: Limits,
) -> CmdResult {
    let s = semigroup_from(args, limits)?;
    let ap = s.apery_set(modulus.unwrap_or_else(|| s.multiplicity()))?;
    match format {
        Format::Plain => {
            let mut p = Plain::default();
            p.line("generators", join(s.generators()))
                .line("modulus", ap.modulus)
                .line("frobenius", ap.frobenius())
                .line("elements", join(&ap.elements));
            data(p.0)
        }
        Format::Json => data(json_bytes(&json!({
            "generators": s.generators(),
            "modulus": ap.modulus,
            "frobenius": ap.frobenius(),
            "elements": ap.elements,
        }))),
        Format::Csv => {
            let mut out = String::from("residue,element\n");
            for (i, e) in ap.elements.iter().enumerate() {
                let _ = writeln!(out, "{i},{e}");
            }
            data(out)
        }
    }
}

fn gaps_cmd(args: &SemigroupArgs, format: Format, limits: Limits) -> CmdResult {
    let s = semigroup_from(args, limits)?;
    let gaps = s.gaps();
    match format {
        Format::Plain => {
            let mut p = Plain::default();
            p.line("generators", join(s.generators()))
                .line("frobenius", s.frobenius())
                .line("genus", gaps.len())
                .line("gaps", join(&gaps));
            data(p.0)
        }
        Format::Json => data(json_bytes(&json!({
            "generators": s.generators(),
            "frobenius": s.frobenius(),
            "genus": gaps.len(),
            "gaps": gaps,
        }))),
        Format::Csv => {
            let mut out = String::from("gap\n");
            for g in &gaps {
                let _ = writeln!(out, "{g}");
            }
            data(out)
        }
    }
}

fn scan_cmd(
    cfg: &ScanConfig,
    jobs: Option<usize>,
    format: Format,
    stderr: &mut dyn Write,
) -> CmdResult {
    cfg.validate()?;
    let shifts = cfg.shifts().len().max(1);
    let jobs = match jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be positive".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
    .min(shifts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let report = pool.install(|| scan_range(cfg))?;

    let _ = writeln!(
        stderr,
        "scanned {} shifts with {jobs} worker(s); {} mismatch(es)",
        report.records.len(),
        report.mismatches.len()
    );
    for m in &report.mismatches {
        let _ = writeln!(stderr, "mismatch at a = {}", m.a);
    }
    if !report.small_shift_anomalies.is_empty() {
        let _ = writeln!(
            stderr,
            "note: anomalies at a <= 30 (not counted): {}",
            join(&report.small_shift_anomalies)
        );
    }

    let mut bytes = Vec::new();
    match format {
        Format::Csv => report
            .write_csv(&mut bytes)
            .map_err(|e| CliError::Io(std::io::Error::other(e)))?,
        Format::Json => {
            report
                .write_json(&mut bytes)
                .map_err(|e| CliError::Io(e.into()))?;
            bytes.push(b'\n');
        }
        Format::Plain => bytes = scan_table(&report).into_bytes(),
    }
    Ok(Output {
        data: bytes,
        disagreement: !report.is_clean(),
    })
}

fn scan_table(report: &ScanReport) -> String {
    let rows: Vec<[String; 10]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.a.to_string(),
                r.residue_mod_8.to_string(),
                opt(r.closed_form),
                opt(r.branch),
                opt(r.max_r_value),
                opt(r.witness_r),
                opt(r.oracle_value),
                opt(r.agree_formula_theorem),
                opt(r.agree_theorem_oracle),
                r.hypothesis_holds.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..10)
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([CSV_HEADER[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let mut emit = |cells: &[&str]| {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    };
    emit(&CSV_HEADER);
    for r in &rows {
        emit(&r.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    }
    out
}

fn profile_cmd(from: u64, to: u64, format: Format) -> CmdResult {
    let profiles = empirical_max_r_profile(from, to)?;
    match format {
        Format::Plain => {
            let mut p = Plain::default();
            for r in &profiles {
                let hist = r
                    .histogram
                    .iter()
                    .map(|(o, c)| format!("{o}x{c}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                p.line(
                    &format!("mod8={}", r.residue),
                    format!(
                        "typical_offset={} offsets=[{hist}] exceptions={} missing={}",
                        r.typical_offset,
                        r.exceptions.len(),
                        r.missing()
                    ),
                );
            }
            data(p.0)
        }
        Format::Json => data(json_bytes(&profiles)),
        Format::Csv => {
            let mut out = String::from("mod8,offset,count\n");
            for r in &profiles {
                for (o, c) in &r.histogram {
                    let _ = writeln!(out, "{},{o},{c}", r.residue);
                }
                if r.missing() > 0 {
                    let _ = writeln!(out, "{},,{}", r.residue, r.missing());
                }
            }
            data(out)
        }
    }
}
