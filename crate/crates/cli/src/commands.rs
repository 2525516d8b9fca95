use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use mhecke_core::expr;
use mhecke_core::extended;
use mhecke_core::hecke;
use mhecke_core::monodromy::{MonodromicDatum, MonodromyClass};
use mhecke_core::parabolic::{CoefMatrix, ParabolicContext};
use mhecke_core::root_datum::SimpleSet;
use mhecke_core::subexpr::{self, SeqS};
use mhecke_core::verify::{self, Bounds, Report, Suite};

pub fn mul(md: &MonodromicDatum, lhs: &str, rhs: &str) -> Result<String> {
    let a = expr::parse(md, lhs).context("left operand")?;
    let b = expr::parse(md, rhs).context("right operand")?;
    Ok(extended::render(md, &extended::ext_mul(md, &a, &b)))
}

/// `J` as 1-based comma-separated indices; empty means `∅`.
pub fn parse_subset(md: &MonodromicDatum, src: &str) -> Result<SimpleSet> {
    let m = md.datum().semisimple_rank();
    let mut j = SimpleSet::empty();
    for tok in src.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = tok.parse().with_context(|| format!("bad index `{tok}` in J"))?;
        if i == 0 || i > m {
            return Err(mhecke_core::error::Error::UnknownIndex(i, m).into());
        }
        j.insert(i - 1);
    }
    Ok(j)
}

pub fn parse_kappa(md: &MonodromicDatum, src: &str) -> Result<MonodromyClass> {
    let kappa: Vec<i64> = src
        .split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad kappa entry `{t}`")))
        .collect::<Result<_>>()?;
    Ok(md.class(&kappa)?)
}

fn matrix_tsv(md: &MonodromicDatum, m: &CoefMatrix) -> String {
    let d = md.datum();
    let mut out = String::from("y\ty'\tentry\n");
    for (y, y2, h) in m.cells() {
        let _ = writeln!(out, "{}\t{}\t{}", d.word_string(y), d.word_string(y2), hecke::render(md, &h));
    }
    out
}

pub struct TablesArgs<'a> {
    pub config_name: &'a str,
    pub config_sha256: &'a str,
    pub j: SimpleSet,
    pub ss: SeqS,
    pub lambda: MonodromyClass,
    pub alpha: i64,
}

pub const TABLE_FILES: [&str; 6] = ["a.tsv", "c.tsv", "d.tsv", "psi.txt", "xi.tsv", "manifest.txt"];

pub fn tables(md: &MonodromicDatum, args: &TablesArgs, out: &Path) -> Result<()> {
    let d = md.datum();
    let ctx = ParabolicContext::new(md, args.j)?;
    let dm = ctx.d_matrix();
    let cm = ctx.c_matrix(&dm)?;
    let am = ctx.a_matrix(&args.ss, args.lambda)?;
    let psi = subexpr::psi(md, &args.ss, args.lambda, args.j)?;
    let xi = subexpr::xi_set(md, &args.ss, args.lambda, args.j)?;

    let mut xi_tsv = String::from("y\tt\ts_tilde\tdelta\td\n");
    for x in &xi {
        let _ = writeln!(
            xi_tsv,
            "{}\t{}\t{}\t{}\t{}",
            x.yy.render(md),
            subexpr::fmt_seq(&x.tt),
            subexpr::fmt_seq(&x.ts),
            x.delta,
            x.delta as i64 + args.alpha
        );
    }
    let manifest = format!(
        "config = {}\nconfig_sha256 = {}\nn = {}\nJ = {}\nss = {}\nkappa = ({})\nalpha = {}\nreps = {}\nfiles = {}\n",
        args.config_name,
        args.config_sha256,
        md.n(),
        args.j,
        subexpr::fmt_seq(&args.ss),
        md.kappa_string(args.lambda),
        args.alpha,
        ctx.reps().iter().map(|&y| d.word_string(y)).collect::<Vec<_>>().join(" "),
        TABLE_FILES[..5].join(" "),
    );

    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let contents = [
        matrix_tsv(md, &am),
        matrix_tsv(md, &cm),
        matrix_tsv(md, &dm),
        format!("{}\n", hecke::render(md, &psi)),
        xi_tsv,
        manifest,
    ];
    for (name, body) in TABLE_FILES.iter().zip(contents) {
        let path = out.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn verify(md: &MonodromicDatum, suites: &[Suite], bounds: &Bounds) -> Result<Vec<Report>> {
    suites
        .iter()
        .map(|&s| verify::run_suite(md, s, bounds).map_err(Into::into))
        .collect()
}
