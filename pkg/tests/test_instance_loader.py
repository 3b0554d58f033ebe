from verify.loaders.instance_loader import RoundTripBatchLoader


def test_small_batch_passes():
    loader = RoundTripBatchLoader(max_workers=2, seed=3, max_degree=2)
    stats = loader.load_all(12, max_g=2)
    assert stats['instances'] == 12
    assert stats['instances_failed'] == 0
    assert stats['divisor_roundtrips_passed'] == 12
    assert stats['charpoly_matches'] == 12
    assert loader.failures == []
    assert 'start_time' not in stats


def test_instances_depend_on_seed_only():
    first = RoundTripBatchLoader(max_workers=1, seed=5).generate(8)
    second = RoundTripBatchLoader(max_workers=4, seed=5).generate(8)
    assert [(i.divisor, i.morphism) for i in first] == [(i.divisor, i.morphism) for i in second]
    other = RoundTripBatchLoader(seed=6).generate(8)
    assert [i.divisor for i in other] != [i.divisor for i in first]
