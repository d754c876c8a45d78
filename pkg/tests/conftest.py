import pytest

from fairshare import (
    Game,
    counterexample3_game,
    example1_game,
    raise_coalition_value,
    solve,
)


@pytest.fixture(scope="session")
def example1() -> Game:
    return example1_game()


@pytest.fixture(scope="session")
def example1_variant(example1) -> Game:
    # same game with coalition {1,3} (mask 0b0101) worth 5 instead of 4
    return raise_coalition_value(example1, 0b0101, 1)


@pytest.fixture(scope="session")
def counterexample3() -> Game:
    return counterexample3_game()


@pytest.fixture(scope="session")
def example1_solution(example1):
    return solve(example1)
