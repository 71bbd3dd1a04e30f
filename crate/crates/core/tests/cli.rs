use golod_lab::cli::{run, CommandResult};
use serde_json::Value;

fn cli(args: &str) -> CommandResult {
    run(std::iter::once("golod-lab").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = cli(&format!("{args} --format json"));
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}{}", out.stdout, out.stderr));
    (out.code, v)
}

/// The value after `key: ` on the first matching line of text output.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn numbers(s: &str) -> Vec<i64> {
    s.split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter(|t| !t.is_empty() && *t != "-")
        .map(|t| t.parse().unwrap())
        .collect()
}

#[test]
fn betti_text_and_json_agree() {
    for f in ["q", "fp:2", "fp:3"] {
        let text = cli(&format!("betti --example paper --field {f}"));
        assert_eq!(text.code, 0);
        let (_, v) = json(&format!("betti --example paper --field {f}"));
        let totals: Vec<i64> = v["totals"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(totals, vec![1, 8, 14, 8, 1]);
        assert_eq!(numbers(field(&text.stdout, "total")), totals);
        let listed: Vec<Vec<i64>> = text
            .stdout
            .lines()
            .skip_while(|l| *l != "multigraded:")
            .skip(1)
            .map(numbers)
            .collect();
        let from_json: Vec<Vec<i64>> = v["multigraded"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let mut row = vec![e["i"].as_i64().unwrap()];
                row.extend(e["multidegree"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()));
                row.push(e["count"].as_i64().unwrap());
                row
            })
            .collect();
        assert_eq!(listed, from_json);
        assert_eq!(v["regularity"], 5);
        assert_eq!(numbers(field(&text.stdout, "regularity")), vec![5]);
    }
}

#[test]
fn golod_verdict_formats_agree() {
    let text = cli("golod --example paper");
    assert_eq!(text.code, 1);
    let (code, v) = json("golod --example paper");
    assert_eq!(code, 1);
    assert_eq!(v["status"], "NotGolod");
    assert_eq!(field(&text.stdout, "status"), "NotGolod");
    assert_eq!(field(&text.stdout, "reason"), v["reason"].as_str().unwrap());
    assert!(field(&text.stdout, "reason").contains("μ₃"));
    assert_eq!(v["witness"]["kind"], "massey");
    assert_eq!(
        numbers(field(&text.stdout, "witness multidegree")),
        v["witness"]["value"]["multidegree"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect::<Vec<_>>()
    );
    let (code, v) = json("golod --example paper --field fp:2");
    assert_eq!((code, v["status"].as_str()), (1, Some("NotGolod")));
}

#[test]
fn massey_formats_agree() {
    let text = cli("massey3 --example paper --gens m_a,m_b,m_c");
    assert_eq!(text.code, 0, "{}", text.stderr);
    let (_, v) = json("massey3 --example paper --gens m_a,m_b,m_c");
    for key in ["defined", "unique", "nonzero"] {
        assert_eq!(field(&text.stdout, key), v[key].to_string());
        assert_eq!(v[key], true);
    }
    assert_eq!(v["value"]["multidegree"], serde_json::json!([1, 2, 1, 2, 3]));
    assert_eq!(v["value"]["homological_degree"], 4);
    assert_eq!(v["value"]["group_dimension"], 1);
    assert_eq!(v["combinatorial"]["agrees"], true);
    assert_eq!(
        field(&text.stdout, "representative"),
        "-e{m_a,m_ab,m_b,m_c} - e{m_a,m_b,m_bc,m_c}"
    );
    assert_eq!(v["value"]["terms"].as_array().unwrap().len(), 2);
    // same generators by index and by monomial
    let by_index = cli("massey3 --example paper --gens 0,3,6");
    assert_eq!(by_index.stdout, text.stdout);
    let by_monomial = cli("massey3 --example paper --gens x1*x2^2,y1*y2^2,z^3");
    assert_eq!(by_monomial.stdout, text.stdout);
}

#[test]
fn series_formats_agree() {
    let text = cli("series --example paper --trunc 5");
    assert_eq!(text.code, 0, "{}", text.stderr);
    let (_, v) = json("series --example paper --trunc 5");
    let arr = |k: &str| v[k].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect::<Vec<_>>();
    assert_eq!(arr("p"), vec![1, 5, 18, 64, 227, 805]);
    assert_eq!(arr("q"), vec![1, 5, 18, 64, 227, 806]);
    assert_eq!(numbers(field(&text.stdout, "P")), arr("p"));
    assert_eq!(numbers(field(&text.stdout, "Q")), arr("q"));
    assert_eq!(v["divergence"]["index"], 5);
    assert_eq!(v["divergence"]["p_less"], true);
    assert_eq!(numbers(field(&text.stdout, "divergence"))[0], 5);
}

#[test]
fn products_and_pattern_check() {
    let text = cli("products --example paper");
    assert_eq!(text.code, 0);
    let (_, v) = json("products --example paper");
    assert_eq!(v["trivial"], true);
    assert_eq!(field(&text.stdout, "pairs"), v["pairs"].to_string());
    let (code, v) = json("pattern-check --example paper-polarized");
    assert_eq!(code, 0);
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["conditions"]["coincidence"], true);
    assert_eq!(v["minimality"]["nvars"], 9);
    assert_eq!(cli("pattern-check --example paper").code, 2);
    let polarized = cli("products --example paper-polarized");
    assert_eq!(field(&polarized.stdout, "trivial"), "true");
}

#[test]
fn fiber_duality_in_output() {
    let (_, v) = json("fiber --example paper --mdeg 1,2,1,2,3");
    let coh: Vec<i64> = v["reduced_cohomology"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    let strand: Vec<i64> = v["strand_homology"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    let g = v["generators"].as_array().unwrap().len() as i64;
    for (i, h) in strand.iter().enumerate() {
        let k = g - i as i64 - 1;
        let c = usize::try_from(k + 1).ok().and_then(|j| coh.get(j)).copied().unwrap_or(0);
        assert_eq!(*h, c);
    }
    assert_eq!(cli("fiber --example paper --mdeg 1,0,0,0,0").code, 2);
}

#[test]
fn polarize_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("golod-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pol = dir.join("pol.txt");
    std::fs::write(&pol, cli("polarize --example paper").stdout).unwrap();
    let from_file = cli(&format!("betti {} --format json", pol.display()));
    let direct = cli("betti --example paper-polarized --format json");
    assert_eq!(from_file.stdout, direct.stdout);
    let complex = dir.join("gamma.txt");
    std::fs::write(&complex, cli(&format!("complex {}", pol.display())).stdout).unwrap();
    let sr = cli(&format!("sr {}", complex.display()));
    assert_eq!(sr.code, 0);
    let back = golod_lab::monomial::MonomialIdeal::parse(&sr.stdout).unwrap();
    let original = golod_lab::monomial::MonomialIdeal::parse(&std::fs::read_to_string(&pol).unwrap()).unwrap();
    let mut a: Vec<_> = back.gens().to_vec();
    let mut b: Vec<_> = original.gens().to_vec();
    a.sort_by_key(|m| m.exponents().to_vec());
    b.sort_by_key(|m| m.exponents().to_vec());
    assert_eq!(a, b);
    let skel = cli(&format!("skeleton {} --dim 4 --format json", complex.display()));
    assert_eq!(serde_json::from_str::<Value>(&skel.stdout).unwrap()["dim"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(cli("betti").code, 2);
    assert_eq!(cli("frobnicate").code, 2);
    assert_eq!(cli("betti --example paper --field fp:4").code, 2);
    assert_eq!(cli("betti /nonexistent/file").code, 2);
    assert_eq!(cli("golod --example paper").code, 1);
    assert_eq!(cli("search --nvars 9 --budget 1 --seed-paper").code, 3);
    assert_eq!(cli("search --nvars 4").code, 0);
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn search_streams_json_lines() {
    let out = cli("search --nvars 9 --max-gens 8 --budget 40 --seed-paper --format json");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["nvars"], 9);
    assert_eq!(lines[0]["ngens"], 8);
    assert_eq!(lines[1]["survivors"], 1);
}
