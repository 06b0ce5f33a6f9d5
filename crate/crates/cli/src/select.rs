use std::fs;

use ternop::algebra::format::parse_structures;
use ternop::{Binding, Structure};

use crate::BindArgs;

pub type CliResult<T> = Result<T, String>;

/// Load `file.alg` or `file.alg#name`; `-s name` also picks the structure.
/// The fragment may be omitted when the file holds exactly one structure.
pub fn load(selector: &str, name: Option<&str>) -> CliResult<Structure> {
    let (path, fragment) = match selector.rsplit_once('#') {
        Some((p, f)) => (p, Some(f)),
        None => (selector, None),
    };
    let wanted = match (fragment, name) {
        (Some(a), Some(b)) if a != b => {
            return Err(format!("selector names `{a}` but -s names `{b}`"))
        }
        (a, b) => a.or(b),
    };
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let all = parse_structures(&text).map_err(|e| format!("{path}:{e}"))?;
    match wanted {
        Some(w) => all
            .into_iter()
            .find(|s| s.name() == w)
            .ok_or_else(|| format!("{path} has no structure named `{w}`")),
        None if all.len() == 1 => Ok(all.into_iter().next().expect("one structure")),
        None => Err(format!(
            "{path} holds {} structures; pick one with `#name` or -s",
            all.len()
        )),
    }
}

fn split_pair(text: &str) -> CliResult<(&str, &str)> {
    text.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| format!("expected KEY=VALUE, got `{text}`"))
}

/// Apply `--const` to `s` and build the binding from `--bind` and `--unit`.
pub fn binding(args: &BindArgs, s: Option<&mut Structure>) -> CliResult<Binding> {
    if let Some(s) = s {
        for c in &args.consts {
            let (name, elem) = split_pair(c)?;
            let e = s
                .resolve(elem)
                .ok_or_else(|| format!("`{elem}` names no element"))?;
            s.insert_const(name, e).map_err(|e| e.to_string())?;
        }
    }
    let mut b = Binding::default();
    for item in &args.bind {
        let (key, value) = split_pair(item)?;
        let slot = match key {
            "mul" => &mut b.mul,
            "t" | "ternary" => &mut b.ternary,
            "star" | "prime" => &mut b.prime,
            "hat" => &mut b.hat,
            "unit" | "l" => {
                b.unit = Some(value.to_string());
                continue;
            }
            _ => return Err(format!("unknown binding key `{key}`")),
        };
        *slot = value.to_string();
    }
    if let Some(u) = &args.unit {
        b.unit = Some(u.clone());
    }
    Ok(b)
}
