import json

import pytest

from bmw_e6.field import ONE, R
from bmw_e6.linalg import Matrix
from bmw_e6.presentation import relation_instances, verify_representation
from bmw_e6.rep import (DATA_CACHE, ActionRule, ConflictError, Rep, StaleCacheError,
                        assemble_partial, basis_words, complete_rep, explicit_action_rules,
                        fixture_checks, load_cache, rules_digest, save_cache, structural_checks,
                        xi_checks)
from bmw_e6.roots import INDEX, LABELS, label


def test_basis_words_cover_every_label():
    words = basis_words()
    assert set(words) == set(LABELS)
    assert words[label("w[5,6]")] == ()
    assert words[label("tlw[5,6]")][:3] == (("g", 2), ("g", 4), ("g", 3))


def test_g1_is_fully_pinned():
    partial = assemble_partial()
    assert not [k for k in partial.unknown if k[0] == 1]
    assert (2, label("hw[4,5]")) in partial.unknown
    assert len(partial.pinned) + len(partial.unknown) == 6 * 36


def test_conflicting_rules_raise_with_both_sources():
    rules = explicit_action_rules()
    bad = ActionRule(1, label("w[1,2]"), ((label("w[1,2]"), R),), "eq:test")
    with pytest.raises(ConflictError) as exc:
        assemble_partial(rules + [bad])
    assert "eq:1" in str(exc.value) and "eq:test" in str(exc.value)


def test_duplicate_rules_keep_all_provenance():
    partial = assemble_partial()
    tags = partial.provenance[(1, label("hw[3,4]"))]
    assert "eq:5" in tags and "definition-1" in tags


def test_pinned_columns_match(rep):
    partial = assemble_partial()
    for (i, lab), image in partial.pinned.items():
        col = {INDEX[t]: c for t, c in image.items()}
        assert rep.g[i].cols[INDEX[lab]] == col


def test_provenance_recorded(rep):
    assert rep.provenance[(1, INDEX[label("w[1,2]")])] == "eq:1"
    assert rep.provenance[(2, INDEX[label("hw[4,5]")])] == "completed"


def test_relations_hold(rep):
    report = verify_representation(rep)
    assert report.passed
    assert sum(t for _, t in report.counts().values()) == len(relation_instances())


def test_perturbed_matrix_is_caught(rep):
    g = dict(rep.g)
    col = dict(g[3].cols[0])
    col[0] = col.get(0, 0 * ONE) + 1
    g[3] = Matrix(36, [col] + g[3].cols[1:])
    report = verify_representation(Rep(g))
    assert not report.passed


def test_fixtures(rep):
    report = fixture_checks(rep)
    assert report.passed, [r for r in report.results if not r.passed]
    assert len(report.results) == 17


def test_xi_and_structure(rep):
    assert all(xi_checks(rep).values())
    assert all(structural_checks(rep).values())


def test_cache_round_trip(rep, tmp_path):
    path = tmp_path / "rep.json"
    save_cache(rep, path)
    again = load_cache(path)
    assert all(again.g[i] == rep.g[i] for i in rep.g)
    assert again.provenance == rep.provenance


def test_stale_cache_rejected(rep, tmp_path):
    path = tmp_path / "rep.json"
    save_cache(rep, path)
    data = json.loads(path.read_text())
    data["digest"] = "0" * 64
    path.write_text(json.dumps(data))
    with pytest.raises(StaleCacheError):
        load_cache(path)


def test_packaged_cache_is_current():
    data = json.loads(open(DATA_CACHE).read())
    assert data["digest"] == rules_digest()


def test_cold_completion_reproduces_packaged_cache(rep):
    fresh = complete_rep(seed=3)
    assert all(fresh.g[i] == rep.g[i] for i in rep.g)
