import stackcoh


def test_hodge_and_derham_mu():
    assert stackcoh.hodge_dims(3, "mu_p", 6) == {n: 1 for n in range(7)}
    assert stackcoh.derham_dims(3, "mu_p", 6) == {n: 1 for n in range(7)}


def test_alpha_derham_is_smaller_than_hodge():
    h = stackcoh.hodge_dims(3, "alpha_p", 4)
    d = stackcoh.derham_dims(3, "alpha_p", 4)
    assert all(d[n] <= h[n] for n in d)
    assert d[1] < h[1]


def test_scenario_roundtrip():
    rep = stackcoh.run_scenario(
        "[scenario]\ntask = hkr-force\np = 3\n[group]\nname = mu_p\n[window]\ndeg_max = 4\n"
        "[abutment]\ndims = 0:3\nn_min = -2\nn_max = 1\n",
        "hkr",
    )
    assert rep["result"]["unique"] is True
    assert rep["search"][0]["assignments"] == ["d_3(d) = c^3"]


def test_errors_are_reported():
    rep = stackcoh.run_scenario("[scenario]\ntask = pgl-omega1\np = 3\n[options]\nn = 1\n", "bad")
    assert rep["error"]["exit_code"] == 3


def test_bad_group_raises():
    try:
        stackcoh.hodge_dims(3, "gl_3", 2)
    except stackcoh.StackcohError:
        return
    raise AssertionError("expected StackcohError")
