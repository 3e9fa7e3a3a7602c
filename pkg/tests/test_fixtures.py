import hashlib
from collections import Counter

import pytest

import lexphylo.fixtures as fixtures
from lexphylo.errors import ContractError
from lexphylo.fixtures import (
    APPENDIX_SHA256,
    RegionGroup,
    appendix_integers,
    derive_region_groups,
    load_reference_matrix,
    load_registry,
    registry_by_label,
)
from lexphylo.phylogeny import to_separation_times, upgma


class TestTriangle:
    def test_entry_count(self):
        values = appendix_integers()
        assert len(values) == 253  # 23 * 22 / 2

    def test_checksum_matches(self):
        values = appendix_integers()
        digest = hashlib.sha256(
            ",".join(str(v) for v in values).encode("ascii")
        ).hexdigest()
        assert digest == APPENDIX_SHA256

    def test_tampering_detected(self, monkeypatch):
        corrupted = fixtures._TRIANGLE.replace("323", "324", 1)
        monkeypatch.setattr(fixtures, "_TRIANGLE", corrupted)
        with pytest.raises(ContractError, match="checksum"):
            appendix_integers()

    def test_published_extremes(self):
        values = appendix_integers()
        assert min(values) == 61
        assert max(values) == 487


class TestReferenceMatrix:
    def test_shape_and_invariants(self):
        m = load_reference_matrix()
        assert m.size == 23
        m.check(unit_range=True)

    def test_known_entries(self):
        m = load_reference_matrix()
        assert m.entry(0, 1) == 0.323
        assert m.entry(5, 10) == 0.061
        assert m.get("Betsileo_Fianarantsoa", "Merina_Antananarivo") == 0.061
        assert m.get("Betsimisaraka_Fenoarivo-Est", "Mahafaly_Ampanihy") == 0.487

    def test_zero_diagonal(self):
        m = load_reference_matrix()
        for i in range(m.size):
            assert m.entry(i, i) == 0.0

    def test_value_range_matches_published_extremes(self):
        m = load_reference_matrix()
        off_diag = [
            m.entry(i, j) for i in range(23) for j in range(23) if i != j
        ]
        assert min(off_diag) == 0.061
        assert max(off_diag) == 0.487

    def test_label_order_follows_registry(self):
        m = load_reference_matrix()
        assert m.labels == tuple(e.label for e in load_registry())


class TestRegistry:
    def test_23_entries_bijective_indices(self):
        registry = load_registry()
        assert len(registry) == 23
        assert [e.index for e in registry] == list(range(1, 24))

    def test_known_rows(self):
        registry = load_registry()
        assert (registry[0].name, registry[0].town) == ("Antambohoaka", "Mananjary")
        assert (registry[10].name, registry[10].town) == ("Merina", "Antananarivo")
        assert (registry[14].name, registry[14].town) == ("Antandroy", "Ambovombe")
        assert (registry[22].name, registry[22].town) == ("Antankarana", "Ambilobe")

    def test_towns_unique_names_repeat(self):
        registry = load_registry()
        towns = [e.town for e in registry]
        assert len(set(towns)) == 23
        names = Counter(e.name for e in registry)
        assert names["Antankarana"] == 3
        assert names["Sakalava"] == 4
        assert names["Betsimisaraka"] == 2

    def test_labels_and_display(self):
        entry = load_registry()[10]
        assert entry.label == "Merina_Antananarivo"
        assert entry.display == "Merina (Antananarivo)"
        assert registry_by_label()["Merina_Antananarivo"] is not None


class TestRegionGroups:
    def test_group_sizes(self):
        counts = Counter(e.region_group for e in load_registry())
        assert counts == {
            RegionGroup.EAST_CENTER: 9,
            RegionGroup.SOUTH_WEST: 7,
            RegionGroup.NORTH: 6,
            RegionGroup.ANTANDROY: 1,
        }

    def test_anchor_members(self):
        by_label = registry_by_label()
        assert by_label["Vezo_Toliara"].region_group is RegionGroup.SOUTH_WEST
        assert by_label["Mahafaly_Ampanihy"].region_group is RegionGroup.SOUTH_WEST
        assert by_label["Antankarana_Vohemar"].region_group is RegionGroup.NORTH
        assert by_label["Merina_Antananarivo"].region_group is RegionGroup.EAST_CENTER
        assert by_label["Antambohoaka_Mananjary"].region_group is RegionGroup.EAST_CENTER
        assert by_label["Antandroy_Ambovombe"].region_group is RegionGroup.ANTANDROY

    def test_regeneration_from_distance_tree(self):
        frozen = {e.label: e.region_group for e in load_registry()}
        derived = derive_region_groups(upgma(load_reference_matrix()))
        assert derived == frozen

    def test_regeneration_from_time_tree(self):
        frozen = {e.label: e.region_group for e in load_registry()}
        times = to_separation_times(load_reference_matrix(), 1000.0)
        derived = derive_region_groups(upgma(times))
        assert derived == frozen

    def test_enum_values_are_stable_strings(self):
        assert {g.value for g in RegionGroup} == {
            "east-center",
            "north",
            "south-west",
            "antandroy",
        }
