"""Campaign pipelines, records, certificates, cache behaviour, CLI."""

import json
import subprocess
import sys

import pytest

from polyminor.catalog import FamilySpec, family_member, herschel
from polyminor.graphs import canonical_form, to_graph6
from polyminor.pipelines import (
    check_theorem1,
    compute_record,
    count_family_forty,
    cross_check_known,
    edge_minimality_report,
    survey_order,
    tally_k26free,
)
from polyminor.records import (
    PropertyRecord,
    cert_verify_record,
    load_cache,
    write_report,
)


def run_cli(*args, stdin_text=None):
    return subprocess.run(
        [sys.executable, "-m", "polyminor.cli", *args],
        capture_output=True,
        text=True,
        input=stdin_text,
    )


class TestComputeRecord:
    def test_herschel_record(self):
        g6 = canonical_form(herschel()).canonical_string
        rec = compute_record(g6)
        assert rec.n == 11 and rec.m == 18
        assert rec.polyhedral and not rec.hamiltonian
        assert rec.ham_witness["kind"] == "bipartite_odd"
        assert rec.minor_flags == {
            "K25": True,
            "K26": False,
            "K115": False,
            "herschel": True,
        }
        assert set(rec.certificates) == {"K25", "herschel"}
        assert cert_verify_record(rec)

    def test_hamiltonian_record_carries_cycle(self):
        from polyminor.catalog import pattern

        g6 = to_graph6(pattern("Cube"))
        rec = compute_record(g6)
        assert rec.hamiltonian and rec.ham_witness["kind"] == "cycle"
        assert cert_verify_record(rec)

    def test_tampered_certificates_fail(self):
        g6 = canonical_form(herschel()).canonical_string
        rec = compute_record(g6)
        # swap two vertices of one branch set in the K25 certificate
        broken = dict(rec.certificates)
        broken["K25"] = broken["K25"].replace("0:", "0: 9", 1)
        bad = PropertyRecord(
            rec.graph6, rec.n, rec.m, rec.polyhedral, rec.hamiltonian,
            rec.ham_witness, rec.minor_flags, broken,
        )
        assert not cert_verify_record(bad)

    def test_fake_cycle_fails(self):
        g6 = canonical_form(herschel()).canonical_string
        rec = compute_record(g6)
        lying = PropertyRecord(
            rec.graph6, rec.n, rec.m, rec.polyhedral, True,
            {"kind": "cycle", "cycle": list(range(10))},
            rec.minor_flags, rec.certificates,
        )
        assert not cert_verify_record(lying)


class TestSurveyAndCampaigns:
    def test_small_orders_have_no_nonhamiltonian_polyhedra(self, tmp_path):
        for n in (4, 5, 6, 7, 8):
            totals, records = survey_order(n, str(tmp_path), jobs=1)
            assert totals["non_hamiltonian"] == 0
            assert records == []

    def test_cache_round_trip(self, tmp_path):
        totals, _ = survey_order(7, str(tmp_path), jobs=1)
        hit = load_cache(str(tmp_path), 7)
        assert hit is not None and hit[0] == totals

    def test_theorem1_small(self, tmp_path):
        report, _ = check_theorem1(8, str(tmp_path))
        assert report.ok
        assert report.totals[8]["polyhedra"] == 257

    def test_cross_check_small(self, tmp_path):
        report, _ = cross_check_known(7, str(tmp_path))
        assert report.ok

    def test_tally_small(self, tmp_path):
        report, per_n = tally_k26free(8, str(tmp_path))
        assert per_n == {4: 0, 5: 0, 6: 0, 7: 0, 8: 0}
        assert sum(per_n.values()) <= 206

    def test_forty_guard(self):
        with pytest.raises(ValueError):
            count_family_forty(15)

    def test_edge_minimality_at_eleven(self):
        report, checked = edge_minimality_report(11)
        assert report.ok
        assert len(checked) == 18  # every Herschel edge deletion leaves the class

    def test_edge_minimality_at_sixteen(self):
        report, checked = edge_minimality_report(16)
        assert report.ok

    def test_degree_three_deletions_always_exit(self):
        g = family_member(FamilySpec("bullet", 12, 0))
        from polyminor.structure import is_k_connected_quick

        v = next(u for u in range(g.n) if g.degree(u) == 3)
        nbr = g.neighbors(v)[0]
        assert not is_k_connected_quick(g.delete_edge(v, nbr), 3)

    def test_report_determinism_across_worker_counts(self, tmp_path):
        rep1, recs1 = check_theorem1(7, str(tmp_path / "c1"), jobs=1)
        rep2, recs2 = check_theorem1(7, str(tmp_path / "c2"), jobs=2)
        p1, p2 = tmp_path / "r1.jsonl", tmp_path / "r2.jsonl"
        write_report(rep1, recs1, p1)
        write_report(rep2, recs2, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_resume_reproduces_report(self, tmp_path):
        cache = str(tmp_path / "cache")
        rep1, recs1 = check_theorem1(7, cache, jobs=1)
        # a second run consults the cache instead of recomputing
        rep2, recs2 = check_theorem1(7, cache, jobs=1)
        p1, p2 = tmp_path / "r1.jsonl", tmp_path / "r2.jsonl"
        write_report(rep1, recs1, p1)
        write_report(rep2, recs2, p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestCli:
    def test_family_and_props_round_trip(self):
        fam = run_cli("family", "bullet:16:31")
        assert fam.returncode == 0
        g6 = fam.stdout.strip()
        props = run_cli("props", "-", stdin_text=g6 + "\n")
        assert props.returncode == 0
        rec = json.loads(props.stdout.strip())
        assert rec["n"] == 16 and rec["hamiltonian"] is False
        assert rec["minor_flags"]["K26"] is False

    def test_gen_counts(self):
        out = run_cli("gen", "-n", "6")
        assert out.returncode == 0
        assert len(out.stdout.strip().splitlines()) == 7
        assert "classes: 7" in out.stderr

    def test_gen_deterministic_across_jobs(self):
        a = run_cli("gen", "-n", "7")
        b = run_cli("--jobs", "2", "gen", "-n", "7")
        assert a.stdout == b.stdout

    def test_verify_forty_exit_code(self):
        out = run_cli("verify", "forty", "-n", "16")
        assert out.returncode == 0
        assert "40 classes" in out.stdout

    def test_verify_theorem1_small(self, tmp_path):
        out = run_cli("--cache", str(tmp_path), "verify", "theorem1", "-n", "7")
        assert out.returncode == 0
        assert "held" in out.stderr

    def test_verify_edge_minimal(self):
        out = run_cli("verify", "edge-minimal", "-n", "13")
        assert out.returncode == 0

    def test_tally_csv_format(self, tmp_path):
        out = run_cli(
            "--cache", str(tmp_path), "--format", "csv", "tally", "k26free", "--max", "6"
        )
        assert out.returncode == 0
        assert "n,polyhedra,non_hamiltonian,k26_free_non_hamiltonian" in out.stdout

    def test_cert_verify_accepts_good_and_rejects_tampered(self, tmp_path):
        g6 = canonical_form(herschel()).canonical_string
        rec = compute_record(g6)
        good = tmp_path / "good.jsonl"
        good.write_text(rec.to_json() + "\n")
        assert run_cli("cert", "verify", str(good)).returncode == 0
        # tamper one branch set of the K25 certificate so it overlaps another
        payload = json.loads(rec.to_json())
        lines = payload["certificates"]["K25"].splitlines()
        lines[0], lines[1] = lines[0].split(":")[0] + ":" + lines[1].split(":")[1], lines[1]
        payload["certificates"]["K25"] = "\n".join(lines)
        bad = tmp_path / "bad.jsonl"
        bad.write_text(json.dumps(payload, sort_keys=True) + "\n")
        out = run_cli("cert", "verify", str(bad))
        assert out.returncode == 1

    def test_malformed_graph6_is_usage_error(self):
        out = run_cli("props", "-", stdin_text="B\x01w\n")
        assert out.returncode == 2

    def test_bad_family_spec_is_usage_error(self):
        out = run_cli("family", "bullet:3:0")
        assert out.returncode == 2
