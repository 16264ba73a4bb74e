//! Golden reports for the fixture corpus. Regenerate with `UPDATE_GOLDEN=1`.

use std::fs;
use std::path::{Path, PathBuf};

use pcross::report::{analyze, to_json_string};
use pcross::{Instance, OracleConfig};

const FIXTURES: [&str; 7] = ["ex-a", "ex-b", "ex-c", "ex-d", "ex-e", "dyn-f", "dyn-h"];

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn check(path: PathBuf, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{} differs", path.display());
}

#[test]
fn fixtures_are_canonical() {
    for name in FIXTURES {
        let text = fs::read_to_string(dir().join(format!("{name}.json"))).unwrap();
        let inst = Instance::parse(&text).unwrap();
        inst.check().unwrap();
        assert_eq!(inst.name, name);
        assert_eq!(inst.to_canonical_string(), text, "{name} is not in canonical form");
    }
}

#[test]
fn reports_match_golden_files() {
    let config = OracleConfig::default();
    for name in FIXTURES {
        let inst = Instance::from_path(&dir().join(format!("{name}.json"))).unwrap();
        let report = analyze(&inst, &config).unwrap();
        check(dir().join("golden").join(format!("{name}.json")), &to_json_string(&report));
        check(dir().join("golden").join(format!("{name}.txt")), &report.to_text());
    }
}
