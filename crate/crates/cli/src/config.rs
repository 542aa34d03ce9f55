//! `--config <file>` support: flat `key = value` lines are turned into
//! `--key=value` flags inserted right after the subcommand, so anything
//! given explicitly on the command line later in argv takes precedence.

use clap::Command;
use std::ffi::OsString;

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", lineno + 1));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Removes `--config` from `args` and splices the file's settings in after
/// the subcommand. Keys that only apply to other subcommands are skipped;
/// keys no subcommand knows are an error.
pub fn merge_config(cmd: &Command, args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        match arg.to_str() {
            Some("--config") => {
                path = Some(iter.next().ok_or("--config requires a file path")?);
            }
            Some(s) if s.starts_with("--config=") => {
                path = Some(OsString::from(&s["--config=".len()..]))
            }
            _ => rest.push(arg),
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
    let entries = parse_config(&text)?;

    let Some(pos) = rest
        .iter()
        .skip(1)
        .position(|a| a.to_str().is_some_and(|s| cmd.find_subcommand(s).is_some()))
        .map(|p| p + 1)
    else {
        return Ok(rest);
    };
    let sub = cmd
        .find_subcommand(rest[pos].to_str().unwrap_or_default())
        .expect("subcommand located above");

    let known = |c: &Command, key: &str| c.get_arguments().any(|a| a.get_long() == Some(key));
    let mut injected = Vec::new();
    for (key, value) in entries {
        if !cmd.get_subcommands().any(|c| known(c, &key)) {
            return Err(format!("unknown config key '{key}'"));
        }
        if !known(sub, &key) {
            continue;
        }
        let is_flag = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .is_some_and(|a| !a.get_action().takes_values());
        if is_flag {
            match value.as_str() {
                "true" | "1" | "yes" => injected.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                other => {
                    return Err(format!(
                        "config key '{key}': expected a boolean, got '{other}'"
                    ))
                }
            }
        } else {
            injected.push(OsString::from(format!("--{key}={value}")));
        }
    }
    rest.splice(pos + 1..pos + 1, injected);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse_config("# c\n\ndense_limit = 4\n tol=1e-9 \n").unwrap();
        assert_eq!(
            e,
            vec![
                ("dense-limit".into(), "4".into()),
                ("tol".into(), "1e-9".into())
            ]
        );
        assert!(parse_config("novalue\n").is_err());
    }
}
