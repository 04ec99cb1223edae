use std::collections::BTreeMap;
use std::path::Path;

use super::catalog::rule_info;
use crate::diagnostic::Severity;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSetting {
    Off,
    Severity(Severity),
}

/// Per-rule enable flags and severity overrides. Rules not mentioned keep
/// their catalog defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleConfig {
    settings: BTreeMap<String, RuleSetting>,
}

impl RuleConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, code: &str, setting: RuleSetting) -> Result<()> {
        if rule_info(code).is_none() {
            return Err(Error::UnknownToken {
                what: "rule code",
                token: code.to_string(),
            });
        }
        self.settings.insert(code.to_string(), setting);
        Ok(())
    }

    pub fn disable(mut self, code: &str) -> Result<Self> {
        self.set(code, RuleSetting::Off)?;
        Ok(self)
    }

    pub fn is_enabled(&self, code: &str) -> bool {
        self.settings.get(code) != Some(&RuleSetting::Off)
    }

    /// Effective severity, `None` when disabled.
    pub fn severity(&self, code: &str, default: Severity) -> Option<Severity> {
        match self.settings.get(code) {
            Some(RuleSetting::Off) => None,
            Some(RuleSetting::Severity(s)) => Some(*s),
            None => Some(default),
        }
    }

    /// Codes with an explicit setting, ascending.
    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.settings.keys().map(String::as_str)
    }

    /// Parses `rule <CODE> off|error|warning|info` lines. `#` starts a
    /// comment; blank lines are ignored; later lines override earlier ones.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RuleConfig::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::RuleConfig { line: line_no, message };
            let words: Vec<&str> = line.split_whitespace().collect();
            let [keyword, code, value] = words[..] else {
                return Err(err(format!(
                    "expected `rule <CODE> off|error|warning|info`, found `{line}`"
                )));
            };
            if keyword != "rule" {
                return Err(err(format!("expected `rule`, found `{keyword}`")));
            }
            let setting = match value {
                "off" => RuleSetting::Off,
                other => RuleSetting::Severity(other.parse().map_err(|_| err(format!("unknown setting `{other}`")))?),
            };
            config
                .set(code, setting)
                .map_err(|_| err(format!("unknown rule code `{code}`")))?;
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::RuleConfig {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }
}
