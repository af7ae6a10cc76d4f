//! Registered-domain extraction using public suffix rules.
//!
//! Implements the standard public-suffix algorithm over a rule snapshot:
//! plain rules (`co.uk`), wildcard rules (`*.ck`), and exception rules
//! (`!www.ck`). The registered domain of a host is the public suffix plus
//! one label; a host that *is* a public suffix is unregistrable and kept
//! verbatim for bucketing.

use std::collections::HashSet;
use std::net::IpAddr;
use std::sync::OnceLock;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PslError {
    #[error("empty host")]
    EmptyHost,
    #[error("host has empty labels: {0:?}")]
    EmptyLabel(String),
}

/// Parsed rule snapshot.
#[derive(Debug, Default, Clone)]
pub struct SuffixRuleSet {
    plain: HashSet<String>,
    /// `*.ck` is stored as `ck`: the fixed part after the wildcard label.
    wildcard: HashSet<String>,
    /// `!www.ck` is stored as `www.ck`.
    exception: HashSet<String>,
}

impl SuffixRuleSet {
    /// Parse a snapshot: one rule per line, `//` comments and blank lines
    /// ignored, rules lowercased.
    pub fn parse(snapshot: &str) -> SuffixRuleSet {
        let mut rules = SuffixRuleSet::default();
        for line in snapshot.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            // A rule ends at the first whitespace, like the upstream format.
            let rule = line.split_whitespace().next().unwrap().to_lowercase();
            if let Some(rest) = rule.strip_prefix('!') {
                rules.exception.insert(rest.to_string());
            } else if let Some(rest) = rule.strip_prefix("*.") {
                rules.wildcard.insert(rest.to_string());
            } else {
                rules.plain.insert(rule);
            }
        }
        rules
    }

    pub fn rule_count(&self) -> usize {
        self.plain.len() + self.wildcard.len() + self.exception.len()
    }

    /// Number of labels the public suffix of `labels` spans under this
    /// rule set, using the prevailing-rule semantics: exceptions win, then
    /// the longest matching rule, then the implicit `*` default.
    fn public_suffix_labels(&self, labels: &[&str]) -> usize {
        let mut best: usize = 1; // implicit default rule `*`
        for start in 0..labels.len() {
            let candidate = labels[start..].join(".");
            if self.exception.contains(&candidate) {
                // An exception names a registrable domain: its public
                // suffix is the rule minus the leftmost label.
                return labels.len() - start - 1;
            }
            if self.plain.contains(&candidate) {
                best = best.max(labels.len() - start);
            }
            // `*.X` matches candidates of the form `anything.X`.
            let after_first = labels[start + 1..].join(".");
            if !after_first.is_empty() && self.wildcard.contains(&after_first) {
                best = best.max(labels.len() - start);
            }
        }
        best
    }
}

/// Result of registered-domain extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisteredDomain {
    /// The registered domain, or the host itself when unregistrable.
    pub name: String,
    /// False when the host is itself a public suffix or an IP literal.
    pub registrable: bool,
    /// The matched public suffix (empty for IP literals).
    pub public_suffix: String,
}

/// Compute the registered domain of a lowercase host.
///
/// A trailing dot (FQDN form) is ignored. IP literals are unregistrable
/// and returned verbatim.
pub fn registered_domain(host: &str, rules: &SuffixRuleSet) -> Result<RegisteredDomain, PslError> {
    let host = host.strip_suffix('.').unwrap_or(host);
    if host.is_empty() {
        return Err(PslError::EmptyHost);
    }
    if host.parse::<IpAddr>().is_ok() || (host.starts_with('[') && host.ends_with(']')) {
        return Ok(RegisteredDomain {
            name: host.to_string(),
            registrable: false,
            public_suffix: String::new(),
        });
    }
    let labels: Vec<&str> = host.split('.').collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(PslError::EmptyLabel(host.to_string()));
    }
    let ps_len = rules.public_suffix_labels(&labels);
    let public_suffix = labels[labels.len() - ps_len..].join(".");
    if ps_len >= labels.len() {
        return Ok(RegisteredDomain {
            name: host.to_string(),
            registrable: false,
            public_suffix,
        });
    }
    let name = labels[labels.len() - ps_len - 1..].join(".");
    Ok(RegisteredDomain {
        name,
        registrable: true,
        public_suffix,
    })
}

/// The rule snapshot bundled with this crate. It covers the common generic
/// TLDs and the country-code registries that matter for news hosts; swap
/// in a fresh upstream snapshot via the CLI flag for full coverage.
pub fn bundled_rules() -> &'static SuffixRuleSet {
    static RULES: OnceLock<SuffixRuleSet> = OnceLock::new();
    RULES.get_or_init(|| SuffixRuleSet::parse(include_str!("../data/public_suffix_snapshot.dat")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(host: &str) -> RegisteredDomain {
        registered_domain(host, bundled_rules()).unwrap()
    }

    #[test]
    fn plain_tld() {
        let r = rd("news.example.com");
        assert_eq!(r.name, "example.com");
        assert!(r.registrable);
        assert_eq!(r.public_suffix, "com");
    }

    #[test]
    fn multi_label_suffix() {
        let r = rd("www.bbc.co.uk");
        assert_eq!(r.name, "bbc.co.uk");
        assert_eq!(r.public_suffix, "co.uk");
    }

    #[test]
    fn host_equal_to_suffix_is_unregistrable() {
        let r = rd("co.uk");
        assert!(!r.registrable);
        assert_eq!(r.name, "co.uk");
        assert_eq!(r.public_suffix, "co.uk");
        assert!(!rd("com").registrable);
    }

    #[test]
    fn wildcard_rule() {
        // *.ck: every label under ck is a public suffix...
        let r = rd("foo.bar.ck");
        assert_eq!(r.name, "foo.bar.ck");
        assert!(r.registrable);
        assert_eq!(r.public_suffix, "bar.ck");
        assert!(!rd("bar.ck").registrable);
    }

    #[test]
    fn exception_rule() {
        // ...except www.ck, which is registrable.
        let r = rd("www.ck");
        assert!(r.registrable);
        assert_eq!(r.name, "www.ck");
        assert_eq!(r.public_suffix, "ck");
        let deep = rd("mail.www.ck");
        assert_eq!(deep.name, "www.ck");
    }

    #[test]
    fn unknown_tld_falls_back_to_default_rule() {
        let r = rd("host.example.zzzz");
        assert_eq!(r.name, "example.zzzz");
        assert_eq!(r.public_suffix, "zzzz");
    }

    #[test]
    fn single_label_host_is_unregistrable() {
        assert!(!rd("localhost").registrable);
    }

    #[test]
    fn ip_hosts_are_unregistrable() {
        let r = rd("192.168.0.1");
        assert!(!r.registrable);
        assert_eq!(r.name, "192.168.0.1");
        assert_eq!(r.public_suffix, "");
    }

    #[test]
    fn trailing_dot_is_ignored() {
        assert_eq!(rd("example.org.").name, "example.org");
    }

    #[test]
    fn empty_hosts_error() {
        assert_eq!(registered_domain("", bundled_rules()), Err(PslError::EmptyHost));
        assert!(matches!(
            registered_domain("a..b", bundled_rules()),
            Err(PslError::EmptyLabel(_))
        ));
    }
}
