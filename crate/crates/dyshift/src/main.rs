use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dyshift::json;
use dyshift::parse::{parse_generator, parse_lie_word, parse_q};
use dyshift::suites::{run_suite, SuiteError, SuiteOpts};
use dyshift::text::{render_free, render_zcoeffs};
use dyshift_core::freealg::{FreeElem, Letter, Side};
use dyshift_core::liealg::MryModel;
use dyshift_core::limitphi::{kernel_window, phi_limit_word};
use dyshift_core::liealg::LieWord;
use dyshift_core::morphisms::{chi, gamma_gen, tau_c, tau_z};
use dyshift_core::phi::{phi_c_gen, phi_z_gen};
use dyshift_core::report::Report;
use dyshift_core::{Error, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dyshift", about = "Exact verification suites for Yangians, Yangian doubles and their classical limits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Cartan type label such as A2, B2 or A2~
    #[arg(long = "type")]
    ty: Option<String>,
    /// Use the untwisted affine type over --type
    #[arg(long)]
    affine: bool,
    /// Index bound N
    #[arg(long)]
    bound: Option<i64>,
    /// Truncation degree M
    #[arg(long)]
    trunc: Option<i64>,
    /// Window R,S
    #[arg(long, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Emit JSON
    #[arg(long)]
    json: bool,
    /// Seed for randomized trials
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scalar parameter c
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite
    Run {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the image of a generator under a map
    /// (tau, tau_z, phi_c, phi_z, gamma, chi, psi, phi_limit)
    Image {
        map: String,
        generator: String,
        #[command(flatten)]
        common: Common,
    },
    /// Bracket two Lie words in the central extension model via ψ
    Bracket {
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel certificate of φ_γ on a window
    Kernel {
        /// Add loop columns x ⊗ v^r w^s
        #[arg(long)]
        loops: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected R,S")?;
    Ok((a.trim().parse().map_err(|_| "bad R")?, b.trim().parse().map_err(|_| "bad S")?))
}

fn opts(c: &Common) -> Result<SuiteOpts> {
    Ok(SuiteOpts {
        ty: c.ty.clone(),
        affine: c.affine,
        bound: c.bound,
        trunc: c.trunc,
        window: c.window,
        seed: c.seed,
        c: c.c.as_deref().map(parse_q).transpose()?,
    })
}

fn print_report(name: &str, rep: &Report, as_json: bool) {
    if as_json {
        for line in json::report_lines(rep) {
            println!("{}", line);
        }
        return;
    }
    for e in rep.failures() {
        let detail = match (&e.residual, &e.note) {
            (Some(r), _) => format!("{}", r),
            (None, Some(n)) => n.clone(),
            _ => String::new(),
        };
        println!("FAIL {} {:?} {}", e.suite, e.cell, detail);
    }
    let total = rep.len();
    let failed = rep.failures().count();
    println!("{} {}: {}/{} pass", name, rep.datum, total - failed, total);
}

fn need_c(o: &SuiteOpts) -> Result<dyshift_core::scalar::Q> {
    o.c.clone().ok_or_else(|| Error::Malformed("this map needs --c".into()))
}

fn image(map: &str, spec: &str, c: &Common) -> Result<String> {
    let o = opts(c)?;
    let m = o.trunc.unwrap_or(8);
    if map == "psi" || map == "phi_limit" {
        let dat = o.datum("A2~")?;
        let model = MryModel::new(&dat)?;
        let w = parse_lie_word(spec)?;
        if map == "psi" {
            let e = model.eval(&w)?;
            return Ok(if c.json { json::uce_to_json(&model.g, &e).to_string() } else { e.render(&model.g) });
        }
        let t = phi_limit_word(&model, &w, u32::try_from(m).map_err(|_| Error::Malformed("trunc".into()))?)?;
        return Ok(if c.json { json::trunc_to_json(&model.g, &t).to_string() } else { t.elem.render(&model.g) });
    }
    let dat = o.datum("A2")?;
    let (side, l): (Side, Letter) = parse_generator(spec)?;
    let src = Some(l.degree());
    let want = |s: Side| if side == s { Ok(()) } else { Err(Error::SideMismatch) };
    let elem: FreeElem = match map {
        "tau" => {
            want(Side::Yangian)?;
            tau_c(&dat, &need_c(&o)?, &l)?
        }
        "tau_z" => {
            want(Side::Yangian)?;
            let z = tau_z(&dat, &l)?;
            return Ok(if c.json {
                json!(z.iter().map(|(k, e)| json!({"z": k, "coeff": json::free_to_json(e)})).collect::<Vec<_>>()).to_string()
            } else {
                render_zcoeffs(&dat, &z, src)
            });
        }
        "phi_z" => {
            want(Side::Double)?;
            let img = phi_z_gen(&dat, &l, m)?;
            return Ok(if c.json {
                let terms: Vec<_> = img.coeffs.iter().map(|(k, e)| json!({"z": k, "coeff": json::free_to_json(e)})).collect();
                json!({"truncation": img.truncation, "terms": terms}).to_string()
            } else {
                render_zcoeffs(&dat, &img.coeffs, src)
            });
        }
        "phi_c" => {
            want(Side::Double)?;
            phi_c_gen(&dat, &l, &need_c(&o)?, m)?
        }
        "gamma" => {
            want(Side::Yangian)?;
            gamma_gen(&dat, &l)?
        }
        "chi" => chi(&need_c(&o)?, &FreeElem::gen(&dat, side, l)?)?,
        other => return Err(Error::Malformed(format!("unknown map `{}`", other))),
    };
    Ok(if c.json { json::free_to_json(&elem).to_string() } else { render_free(&dat, &elem, src) })
}

fn bracket(a: &str, b: &str, c: &Common) -> Result<String> {
    let o = opts(c)?;
    let model = MryModel::new(&o.datum("A2~")?)?;
    let w = LieWord::br(parse_lie_word(a)?, parse_lie_word(b)?);
    let e = model.eval(&w)?;
    Ok(if c.json { json::uce_to_json(&model.g, &e).to_string() } else { e.render(&model.g) })
}

fn kernel(loops: bool, c: &Common) -> Result<(bool, String)> {
    let o = opts(c)?;
    let (r, s) = o.window.unwrap_or((4, 4));
    let m = o.trunc.unwrap_or((2 * s + 2).max(8));
    let m = u32::try_from(m).map_err(|_| Error::Malformed("trunc".into()))?;
    let g = if loops { Some(dyshift_core::liealg::build_simple(o.datum("A2")?.ty.finite_part())?) } else { None };
    let k = kernel_window(r, s, m, g.as_ref())?;
    let text = if c.json {
        json::rank_report_to_json(&k).to_string()
    } else {
        let ker: Vec<String> = k
            .kernel_basis
            .iter()
            .map(|v| v.iter().map(|(l, q)| format!("({})*{}", q, l)).collect::<Vec<_>>().join(" + "))
            .collect();
        format!(
            "window R={} S={} M={}: domain {} rank {} nullity {} kernel [{}]",
            k.r, k.s, k.m, k.domain_dim, k.rank, k.nullity, ker.join("; ")
        )
    };
    Ok((k.kernel_is_cw(), text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out: std::result::Result<bool, (u8, String)> = match &cli.cmd {
        Cmd::Run { suite, common } => match opts(common).map_err(SuiteError::Core).and_then(|o| run_suite(suite, &o)) {
            Ok(rep) => {
                print_report(suite, &rep, common.json);
                Ok(rep.passed())
            }
            Err(e) => Err((2, e.to_string())),
        },
        Cmd::Image { map, generator, common } => image(map, generator, common).map(|s| {
            println!("{}", s);
            true
        }).map_err(|e| (2, e.to_string())),
        Cmd::Bracket { a, b, common } => bracket(a, b, common).map(|s| {
            println!("{}", s);
            true
        }).map_err(|e| (2, e.to_string())),
        Cmd::Kernel { loops, common } => kernel(*loops, common).map(|(ok, s)| {
            println!("{}", s);
            ok
        }).map_err(|e| (2, e.to_string())),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
