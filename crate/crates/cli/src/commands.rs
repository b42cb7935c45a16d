use std::fmt::Write as _;
use std::fs;
use std::path::Path as FsPath;

use anyhow::{bail, Context, Result};
use effdim_core::dimension::{analyze as analyze_quiver, AnalysisReport};
use effdim_core::oracle::{default_max_len, VerifyReport};
use effdim_core::repbuild::{AnyRep, RepresentationJson};
use effdim_core::suite::{standard_suite, DEFAULT_SEED};
use effdim_core::{
    an_closed_form, build_path_rep, build_truncated_rep, effdim_truncated, line_segments,
    parse_quiver, stabilization, verify_path_rep, verify_truncated, Quiver, Representation,
};
use serde_json::json;

use crate::Global;

pub struct Output {
    pub text: String,
    /// False when a verification failed.
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            success: true,
        }
    }
}

pub fn emit(out: &Output, g: &Global) -> Result<()> {
    let mut text = out.text.clone();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &g.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &FsPath) -> Result<Quiver> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_quiver(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn truncation(g: &Global) -> Option<usize> {
    g.truncate.map(|n| n as usize)
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut rows = vec![vec!["vertex", "scc", "commutative", "l-", "l+"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()];
    if r.truncation.is_some() {
        rows[0].extend(["K(x)".to_string(), "d".to_string()]);
    }
    for v in &r.vertices {
        let mut row = vec![
            v.vertex.clone(),
            v.scc.to_string(),
            if v.commutative { "yes" } else { "no" }.to_string(),
            v.l_minus.to_string(),
            v.l_plus.to_string(),
        ];
        if r.truncation.is_some() {
            row.push(v.k.map_or("empty".to_string(), |[lo, hi]| format!("[{lo}, {hi}]")));
            row.push(v.d.map_or(String::new(), |d| d.to_string()));
        }
        rows.push(row);
    }
    let mut out = table(&rows);
    let t = &r.totals;
    out.push('\n');
    let _ = writeln!(out, "eff.dim(P) = {}", t.effdim_path);
    if let (Some(n), Some(e)) = (r.truncation, t.effdim_truncated) {
        let _ = writeln!(out, "eff.dim(P_{n}) = {e}");
    }
    let _ = writeln!(
        out,
        "eff.dim(P_N) = {}N + {} for N >= {}",
        t.a, t.b, t.threshold
    );
    out
}

pub fn analyze(path: &FsPath, g: &Global) -> Result<Output> {
    let q = load(path)?;
    let report = analyze_quiver(&q, truncation(g))?;
    let text = if g.json {
        pretty(&report)?
    } else {
        render_analysis(&report)
    };
    Ok(Output::ok(text))
}

pub fn construct(path: &FsPath, g: &Global) -> Result<Output> {
    let q = load(path)?;
    let json = match truncation(g) {
        Some(n) => build_truncated_rep(&q, n)?.to_json(&q),
        None => build_path_rep(&q).to_json(&q),
    };
    Ok(Output::ok(pretty(&json)?))
}

fn render_verify(r: &VerifyReport, q: &Quiver, g: &Global) -> Result<Output> {
    let text = if g.json {
        pretty(&r.to_json(q))?
    } else {
        let mut s = format!(
            "status: {}\nchecked: {}\nmax_length: {}\n",
            r.status.as_str(),
            r.checked,
            r.max_length
        );
        if !r.witness.is_empty() {
            let w: Vec<String> = r.witness.iter().map(|p| p.display(q)).collect();
            let _ = writeln!(s, "witness: {}", w.join(", "));
        }
        s
    };
    Ok(Output {
        text,
        success: r.is_effective(),
    })
}

pub fn verify(path: &FsPath, rep_file: Option<&FsPath>, g: &Global) -> Result<Output> {
    let q = load(path)?;
    let report = match rep_file {
        Some(file) => {
            let text =
                fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let json: RepresentationJson = serde_json::from_str(&text)
                .with_context(|| format!("parsing representation {}", file.display()))?;
            match json.into_rep(&q)? {
                AnyRep::Graded(rep) => {
                    if let Some(n) = truncation(g) {
                        if n != rep.n_trunc {
                            bail!(
                                "--truncate {n} does not match the representation's level {}",
                                rep.n_trunc
                            );
                        }
                    }
                    verify_truncated(&rep, &q, rep.n_trunc)?
                }
                AnyRep::Symbolic(rep) => {
                    if truncation(g).is_some() {
                        bail!("--truncate given for a representation of the full path semigroup");
                    }
                    let len = g.max_len.map_or(default_max_len(&q), |l| l as usize);
                    verify_path_rep(&rep, &q, len)?
                }
            }
        }
        None => match truncation(g) {
            Some(n) => verify_truncated(&build_truncated_rep(&q, n)?, &q, n)?,
            None => {
                let len = g.max_len.map_or(default_max_len(&q), |l| l as usize);
                verify_path_rep(&build_path_rep(&q), &q, len)?
            }
        },
    };
    render_verify(&report, &q, g)
}

pub fn stabilize(path: &FsPath, g: &Global) -> Result<Output> {
    let q = load(path)?;
    let st = stabilization(&q);
    let n = q.num_vertices();
    let values = (1..=n + 1)
        .map(|big_n| effdim_truncated(&q, big_n).map(|v| (big_n, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let text = if g.json {
        let table: Vec<_> = values
            .iter()
            .map(|&(big_n, v)| json!({"N": big_n, "effdim": v}))
            .collect();
        pretty(&json!({"a": st.a, "b": st.b, "threshold": st.threshold, "table": table}))?
    } else {
        let mut rows = vec![vec!["N".to_string(), "eff.dim(P_N)".to_string()]];
        rows.extend(
            values
                .iter()
                .map(|(big_n, v)| vec![big_n.to_string(), v.to_string()]),
        );
        format!(
            "a = {}, b = {}, threshold = {}\n\n{}",
            st.a,
            st.b,
            st.threshold,
            table(&rows)
        )
    };
    Ok(Output::ok(text))
}

pub fn formula(path: Option<&FsPath>, segments: Option<&[usize]>, g: &Global) -> Result<Output> {
    let Some(n) = truncation(g) else {
        bail!("formula needs --truncate N");
    };
    let segs = match (path, segments) {
        (_, Some(s)) => s.to_vec(),
        (Some(p), None) => {
            let q = load(p)?;
            line_segments(&q).with_context(|| format!("{} is not of type A", p.display()))?
        }
        (None, None) => bail!("formula needs a quiver file or --segments"),
    };
    let value = an_closed_form(&segs, n)?;
    let text = if g.json {
        pretty(&json!({"segments": segs, "truncation": n, "effdim": value}))?
    } else {
        let list: Vec<String> = segs.iter().map(usize::to_string).collect();
        format!("segments ({}): eff.dim(P_{n}) = {value}", list.join(", "))
    };
    Ok(Output::ok(text))
}

struct SuiteLine {
    index: usize,
    vertices: usize,
    arrows: usize,
    path_dim: usize,
    path_ok: bool,
    trunc: Vec<(usize, usize, bool)>,
}

pub fn suite(count: usize, g: &Global) -> Result<Output> {
    let seed = g.seed.unwrap_or(DEFAULT_SEED);
    let levels: Vec<usize> = match truncation(g) {
        Some(n) => vec![n],
        None => (1..=4).collect(),
    };
    let mut quivers = standard_suite(seed);
    if count > quivers.len() {
        quivers = effdim_core::suite::random_quivers(seed, count, 5, 7);
    }
    quivers.truncate(count);

    let mut lines = Vec::with_capacity(quivers.len());
    for (index, q) in quivers.iter().enumerate() {
        let rep = build_path_rep(q);
        let len = g.max_len.map_or(default_max_len(q), |l| l as usize);
        let path_ok = verify_path_rep(&rep, q, len)?.is_effective();
        let mut trunc = Vec::new();
        for &n in &levels {
            let rep = build_truncated_rep(q, n)?;
            let ok = verify_truncated(&rep, q, n)?.is_effective()
                && rep.total_dim() == effdim_truncated(q, n)?;
            trunc.push((n, rep.total_dim(), ok));
        }
        lines.push(SuiteLine {
            index,
            vertices: q.num_vertices(),
            arrows: q.num_arrows(),
            path_dim: rep.total_dim(),
            path_ok,
            trunc,
        });
    }
    let failures = lines
        .iter()
        .filter(|l| !l.path_ok || l.trunc.iter().any(|t| !t.2))
        .count();

    let text = if g.json {
        let items: Vec<_> = lines
            .iter()
            .map(|l| {
                json!({
                    "index": l.index,
                    "vertices": l.vertices,
                    "arrows": l.arrows,
                    "effdim_path": l.path_dim,
                    "path_effective": l.path_ok,
                    "truncated": l.trunc.iter().map(|&(n, d, ok)| json!({"N": n, "effdim": d, "effective": ok})).collect::<Vec<_>>(),
                })
            })
            .collect();
        pretty(
            &json!({"seed": seed, "count": lines.len(), "failures": failures, "quivers": items}),
        )?
    } else {
        let mut header = vec!["#".to_string(), "n".into(), "m".into(), "eff.dim(P)".into()];
        header.extend(levels.iter().map(|n| format!("P_{n}")));
        let mut rows = vec![header];
        for l in &lines {
            let mark = |ok: bool| if ok { "" } else { " FAIL" };
            let mut row = vec![
                l.index.to_string(),
                l.vertices.to_string(),
                l.arrows.to_string(),
                format!("{}{}", l.path_dim, mark(l.path_ok)),
            ];
            row.extend(l.trunc.iter().map(|&(_, d, ok)| format!("{d}{}", mark(ok))));
            rows.push(row);
        }
        format!(
            "{}\nseed {seed}: {} quivers, {failures} failures\n",
            table(&rows),
            lines.len()
        )
    };
    Ok(Output {
        text,
        success: failures == 0,
    })
}
