//! `--config FILE`: plain `key=value` lines whose keys are the long flag names.
//! Flags given on the command line win over the file.

use std::fs;

/// Appends `--key value` for every file entry whose flag is not already present.
pub fn merge(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let (path, skip) = match args[pos].strip_prefix("--config=") {
        Some(p) => (p.to_string(), 1),
        None => (args.get(pos + 1).cloned().ok_or("--config needs a file")?, 2),
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let mut out: Vec<String> = args[..pos].iter().chain(&args[pos + skip..]).cloned().collect();
    let given = |key: &str, out: &[String]| {
        let flag = format!("--{key}");
        out.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if given(key, &out) {
            continue;
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            _ => {
                out.push(format!("--{key}"));
                out.push(value.to_string());
            }
        }
    }
    Ok(out)
}
