"""Smoke tests for the pybind11 module. The heavy verification lives in the
C++ suites; these check the Python surface end to end."""

import json
import math

import pytest

import context_eval


def test_extract_domain():
    assert context_eval.extract_domain("http://WWW.Breitbart.com/x") == "breitbart.com"
    assert context_eval.extract_domain("https://v.redd.it/abc") == "v.redd.it"
    assert context_eval.extract_domain("not a url") == ""


def test_gini():
    assert context_eval.gini([5, 5, 5, 5]) == 0.0
    assert abs(context_eval.gini([1, 0, 0, 0]) - 0.75) < 1e-12
    assert abs(context_eval.gini([3, 1]) - 0.25) < 1e-12
    with pytest.raises(ValueError):
        context_eval.gini([0, 0])


def test_pearson():
    r, p = context_eval.pearson([1, 2, 3, 4], [2, 4, 6, 8])
    assert abs(r - 1.0) < 1e-12
    assert p < 1e-9
    r, p = context_eval.pearson([1, 2, 3], [2, 4, 7])
    assert 0.9 < r < 1.0
    assert 0.0 <= p <= 1.0
    with pytest.raises(ValueError):
        context_eval.pearson([1, 2, 3], [4, 4, 4])


def test_kde_integrates_to_one():
    values = [0.1 * (i % 11) + 0.01 * i for i in range(80)]
    grid, density, bandwidth = context_eval.kde(values, 201)
    assert bandwidth > 0
    integral = sum(
        0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1])
        for i in range(1, len(grid))
    )
    assert math.isclose(integral, 1.0, abs_tol=0.05)


def test_metrics():
    truths = [True] * 10 + [False] * 5
    preds = [True] * 8 + [False] * 2 + [True] * 2 + [False] * 3
    m = context_eval.metrics(truths, preds)
    assert m["tp"] == 8 and m["fp"] == 2 and m["fn"] == 2 and m["tn"] == 3
    assert math.isclose(m["precision"], 0.8)
    assert math.isclose(m["recall"], 0.8)
    assert math.isclose(m["f1"], 0.8)


def test_parse_archive():
    lines = [
        json.dumps(
            {
                "id": "p1",
                "author": "alice",
                "subreddit": "News",
                "created_utc": 1451606400,
                "url": "https://www.example.com/a",
                "score": 3,
                "title": "hello",
            }
        ),
        "not json",
    ]
    out = context_eval.parse_archive("\n".join(lines) + "\n")
    assert out["lines"] == 2
    assert out["skipped"] == 1
    (post,) = out["posts"]
    assert post["community"] == "news"
    assert post["domain"] == "example.com"
    assert post["score"] == 3


def test_normalized_scores():
    scores = context_eval.normalized_scores(["a", "b", "c"], [1, 2, 3])
    assert scores["b"] == 1.0
    assert scores["a"] == 0.5
    assert scores["c"] == 1.5
