#include <doctest.h>

#include "mcc/metrics.hpp"
#include "mcc/errors.hpp"
#include "test_support.hpp"

using namespace mcc;
using mcc::test::make_frag;

namespace {

struct Setup {
    std::vector<Fragment> gt;
    std::map<std::string, Fragment> index;

    Setup() {
        // Two GT objects, three fragments each.
        gt.push_back(make_frag("A", 0, 8, 0, 30, 6, "A"));
        gt.push_back(make_frag("B", 0, 8, 0, 30, 18, "B"));
        int n = 0;
        for (const char* label : {"A", "B"}) {
            for (int p = 0; p < 3; ++p) {
                Fragment f = make_frag("f" + std::to_string(n++), p * 3.0, p * 3.0 + 2.0,
                                       p * 90.0, 30, label[0] == 'A' ? 6 : 18, label);
                index.emplace(f.id, f);
            }
        }
    }
};

}  // namespace

TEST_CASE("perfect association scores zero on both metrics") {
    Setup s;
    std::vector<Trajectory> pred = {
        Trajectory{{"f0", "f1", "f2"}, 0, 8},
        Trajectory{{"f3", "f4", "f5"}, 0, 8},
    };
    auto r = evaluate(s.gt, pred, s.index);
    CHECK(r.n_distinct_predicted == 2);
    CHECK(r.fragments_per_gt == 0.0);
    CHECK(r.switches_per_gt == 0.0);
    CHECK(r.fragments_per_gt_count == doctest::Approx(1.0));
}

TEST_CASE("singleton trajectories follow the count convention") {
    Setup s;
    std::vector<Trajectory> pred;
    for (const auto& [id, f] : s.index)
        pred.push_back(Trajectory{{id}, f.first_t(), f.last_t()});
    auto r = evaluate(s.gt, pred, s.index);
    CHECK(r.n_distinct_predicted == 6);
    CHECK(r.fragments_per_gt_count == doctest::Approx(3.0));  // 6 pieces / 2 GT
    CHECK(r.fragments_per_gt == doctest::Approx(2.0));        // 2 interruptions per GT
}

TEST_CASE("a cross-trajectory switch is counted") {
    Setup s;
    std::vector<Trajectory> pred = {
        Trajectory{{"f0", "f1", "f5"}, 0, 8},  // B's last fragment stolen
        Trajectory{{"f3", "f4", "f2"}, 0, 8},
    };
    auto r = evaluate(s.gt, pred, s.index);
    // Each GT's fragment sequence jumps trajectory once.
    CHECK(r.switches_per_gt == doctest::Approx(1.0));
    CHECK(r.fragments_per_gt == doctest::Approx(1.0));
}

TEST_CASE("unassociated fragments count as interruptions") {
    Setup s;
    std::vector<Trajectory> pred = {
        Trajectory{{"f0", "f2"}, 0, 8},  // f1 dropped
        Trajectory{{"f3", "f4", "f5"}, 0, 8},
    };
    auto r = evaluate(s.gt, pred, s.index);
    CHECK(r.switches_per_gt == 0.0);
    CHECK(r.fragments_per_gt == doctest::Approx(1.0));  // (1 gap + 1 unassoc) / 2 GT
}

TEST_CASE("metrics invariant under trajectory relabeling") {
    Setup s;
    std::vector<Trajectory> pred = {
        Trajectory{{"f0", "f1", "f2"}, 0, 8},
        Trajectory{{"f3", "f4", "f5"}, 0, 8},
    };
    auto a = evaluate(s.gt, pred, s.index);
    std::swap(pred[0], pred[1]);
    auto b = evaluate(s.gt, pred, s.index);
    CHECK(a.fragments_per_gt == b.fragments_per_gt);
    CHECK(a.switches_per_gt == b.switches_per_gt);
    CHECK(a.fragments_per_gt_count == b.fragments_per_gt_count);
}

TEST_CASE("missing label raises") {
    Setup s;
    Fragment unlabeled = make_frag("fx", 0, 1, 0, 30, 6);
    s.index.emplace("fx", unlabeled);
    CHECK_THROWS_AS(evaluate(s.gt, {}, s.index), MissingLabel);
}

TEST_CASE("empty prediction and empty ground truth") {
    auto r = evaluate({}, {}, {});
    CHECK(r.n_distinct_predicted == 0);
    CHECK(r.fragments_per_gt == 0.0);
    CHECK(r.switches_per_gt == 0.0);
}
