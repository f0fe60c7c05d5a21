//! Config files hold `key = value` lines named after long flags. They are
//! spliced into the argument list right after the subcommand, and any flag
//! given on the command line wins over the file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, CommandFactory};

use crate::cli::Cli;

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}

pub fn parse_entries(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected `key = value`, got `{line}`", path.display(), i + 1);
        };
        out.push((key.trim().to_string(), value.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

/// Returns `argv` with the config file's entries inserted.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let entries = parse_entries(&text, path)?;

    // Walk the subcommand chain to find the insertion point.
    let root = Cli::command();
    let mut cmd = &root;
    let mut insert_at = None;
    for (i, tok) in argv.iter().enumerate().skip(1) {
        if tok.starts_with('-') {
            continue;
        }
        if let Some(sub) = cmd.find_subcommand(tok) {
            cmd = sub;
            insert_at = Some(i + 1);
        }
    }
    let Some(insert_at) = insert_at else {
        bail!("a config file needs a subcommand");
    };

    let mut extra = Vec::new();
    for (key, value) in entries {
        let arg = cmd
            .get_arguments()
            .chain(root.get_arguments().filter(|a| a.is_global_set()))
            .find(|a| a.get_long() == Some(key.as_str()))
            .with_context(|| format!("unknown config key `{key}` for `{}`", cmd.get_name()))?;
        if key == "config" {
            bail!("config files cannot include other config files");
        }
        let flag = format!("--{key}");
        let given = argv.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "yes" | "1" => extra.push(flag),
                "false" | "no" | "0" => {}
                _ => bail!("config key `{key}` expects true or false, got `{value}`"),
            }
        } else {
            extra.push(format!("{flag}={value}"));
        }
    }
    let mut out = argv;
    out.splice(insert_at..insert_at, extra);
    Ok(out)
}
