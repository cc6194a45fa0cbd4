use std::path::Path;

/// Default scan bounds read from a `key=value` file. Blank lines and lines
/// starting with `#` are skipped; unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub h_c: Option<u64>,
    pub h_k: Option<u64>,
    pub h_b: Option<u64>,
    pub h: Option<u64>,
    pub h_p: Option<u64>,
    pub periods: Option<Vec<u32>>,
    pub workers: Option<usize>,
    pub quartic_h: Option<u64>,
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config: invalid value '{value}' for {key}"))
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        text.parse()
    }
}

impl std::str::FromStr for Config {
    type Err = String;

    fn from_str(text: &str) -> Result<Config, String> {
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "h_c" => cfg.h_c = Some(number(key, value)?),
                "h_k" => cfg.h_k = Some(number(key, value)?),
                "h_b" => cfg.h_b = Some(number(key, value)?),
                "h" => cfg.h = Some(number(key, value)?),
                "h_p" => cfg.h_p = Some(number(key, value)?),
                "workers" => cfg.workers = Some(number(key, value)?),
                "quartic_h" => cfg.quartic_h = Some(number(key, value)?),
                "periods" => {
                    cfg.periods = Some(
                        value
                            .split(',')
                            .map(|p| number(key, p.trim()))
                            .collect::<Result<_, _>>()?,
                    )
                }
                _ => return Err(format!("config line {}: unknown key '{key}'", lineno + 1)),
            }
        }
        Ok(cfg)
    }
}
