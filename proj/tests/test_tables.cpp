#include <gtest/gtest.h>

#include "a2h/a2h.hpp"

using namespace a2h;

namespace {

const ExtNat kInf = ExtNat::inf();
ExtNat e(unsigned v) { return ExtNat::of(v); }

std::string cell(int table, RowClass row, Family f, ExtNat r, ExtNat s) {
    auto g = expected_cell(table, row, f, r, s);
    return g ? g->pretty() : "n/a";
}

TableOptions small_options() {
    TableOptions opt;
    opt.r_values = {e(1), e(2), e(3)};
    opt.s_values = {e(1), e(2)};
    return opt;
}

}  // namespace

TEST(ClosedForms, StemThreeTranscription) {
    EXPECT_EQ(cell(1, RowClass::N4, Family::Mn, e(1), e(1)), "Z2 + Z4");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Mn, e(3), e(1)), "Z2 + Z4 + Z16");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Ceta, e(1), e(1)), "Z2 + Z(2)");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Cs, e(1), e(2)), "Z2 + Z2 + Z(2)");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Crs, e(1), e(3)), "Z2 + Z2 + Z4");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Crs, e(2), e(3)), "Z2 + Z2 + Z2 + Z8");
    EXPECT_EQ(cell(1, RowClass::Stable, Family::Mn, e(4), e(1)), "Z2 + Z8");
    EXPECT_EQ(cell(1, RowClass::Stable, Family::Mn1, e(1), e(1)), "Z4");
    EXPECT_EQ(cell(1, RowClass::Stable, Family::Ceta, e(1), e(1)), "Z4");
    EXPECT_EQ(cell(1, RowClass::Stable, Family::Crs, e(3), e(1)), "Z2 + Z2 + Z4");
    EXPECT_EQ(cell(1, RowClass::N3, Family::Mn, e(3), e(1)), "Z2 + Z4 + Z8");
}

TEST(ClosedForms, StemFourTranscription) {
    EXPECT_EQ(cell(2, RowClass::N4, Family::Mn, e(1), e(1)), "Z2 + Z2");
    EXPECT_EQ(cell(2, RowClass::N4, Family::Cs, e(1), e(3)), "Z2 + Z8 + Z16");
    EXPECT_EQ(cell(2, RowClass::N4, Family::Crs, e(2), e(1)), "Z2 + Z2 + Z4 + Z8");
    EXPECT_EQ(cell(2, RowClass::N5, Family::Ceta, e(1), e(1)), "Z2");
    EXPECT_EQ(cell(2, RowClass::Stable, Family::Ceta, e(1), e(1)), "0");
    EXPECT_EQ(cell(2, RowClass::Stable, Family::Crs, e(1), e(4)), "Z4 + Z8");
    EXPECT_EQ(cell(2, RowClass::N3, Family::Ceta, e(1), e(1)), "Z(2)");
    EXPECT_EQ(cell(2, RowClass::N3, Family::Mn, e(2), e(1)), "Z2 + Z2 + Z4");
}

TEST(ClosedForms, InfiniteParameters) {
    EXPECT_EQ(cell(1, RowClass::N4, Family::Mn, kInf, e(1)), "n/a");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Cs, e(1), kInf), "n/a");
    EXPECT_EQ(cell(1, RowClass::N4, Family::Crs, kInf, kInf), "n/a");
    // C_r^{n+2,∞} = C_r^{n+2} v S^{n+1}
    auto crs = expected_cell(1, RowClass::N4, Family::Crs, e(2), kInf);
    ASSERT_TRUE(crs);
    EXPECT_EQ(*crs, *expected_cell(1, RowClass::N4, Family::Cr, e(2), e(1)) + CanonicalGroup::cyclic(1));
    // in stem four on S^4 the wedge carries a Whitehead-product cross term
    auto crs2 = expected_cell(2, RowClass::N4, Family::Crs, e(2), kInf);
    ASSERT_TRUE(crs2);
    EXPECT_EQ(*crs2, *expected_cell(2, RowClass::N4, Family::Cr, e(2), e(1)) + CanonicalGroup::cyclic(3) + CanonicalGroup::cyclic(2));
}

TEST(ClosedForms, SuspensionConsistencyOfMooreColumns) {
    // π_{n+4}(M^{n+1}) (n >= 4) equals π_{(n+1)+3}(M^{n+1}) in the stable stem-three row
    for (unsigned r = 1; r <= 6; ++r)
        for (RowClass row : {RowClass::N4, RowClass::N5, RowClass::Stable})
            EXPECT_EQ(expected_cell(2, row, Family::Mn1, e(r), e(1)), expected_cell(1, RowClass::Stable, Family::Mn, e(r), e(1)))
                << "r=" << r;
}

TEST(Regenerate, ParallelMatchesSerial) {
    TableOptions a = small_options(), b = small_options();
    b.parallel = false;
    for (int t : {1, 2}) {
        auto x = regenerate(t, a), y = regenerate(t, b);
        ASSERT_EQ(x.size(), y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_EQ(x[i].computed, y[i].computed);
            EXPECT_EQ(x[i].status, y[i].status);
        }
    }
}

TEST(Regenerate, CellCountsAndStatuses) {
    auto cells = regenerate(1, TableOptions{});
    EXPECT_EQ(cells.size(), 5u * 5u * 3u * 6u);
    std::size_t na = 0, ref = 0;
    for (const auto& c : cells) {
        na += c.status == CellStatus::NotApplicable;
        ref += c.status == CellStatus::Reference;
        EXPECT_NE(c.status, CellStatus::Error) << c.key.str() << ": " << c.message;
        EXPECT_NE(c.status, CellStatus::Ambiguous) << c.key.str();
    }
    EXPECT_GT(na, 0u);
    EXPECT_GT(ref, 0u);
}

TEST(Verify, StemThreeTableMatches) {
    VerifyReport rep = verify_table(1, TableOptions{});
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.matched, rep.checked);
    EXPECT_EQ(rep.checked, 258u);
}

TEST(Verify, StemFourMismatchesAreConfinedToTheDocumentedCells) {
    // every mismatch is the order of the top summand of π_8(C^{6,s}), s >= 3, or a cell built from it
    VerifyReport rep = verify_table(2, TableOptions{});
    EXPECT_EQ(rep.checked, 387u);
    EXPECT_EQ(rep.matched, 374u);
    for (const auto& c : rep.cells) {
        if (c.status != CellStatus::Mismatch) continue;
        EXPECT_EQ(c.key.row, RowClass::N4) << c.key.str();
        EXPECT_TRUE(c.key.family == Family::Cs || c.key.family == Family::Crs) << c.key.str();
        ASSERT_FALSE(c.key.s.is_inf());
        EXPECT_GE(c.key.s.get(), 3u) << c.key.str();
        if (c.key.family == Family::Crs) {
            EXPECT_TRUE(c.key.r.is_inf() || c.key.r.get() > c.key.s.get()) << c.key.str();
        }
        // the engine's answer is half the closed form, in the largest summand
        ASSERT_TRUE(c.computed && c.expected);
        EXPECT_EQ(c.computed->log_order() + 1, c.expected->log_order()) << c.key.str();
    }
}

TEST(Verify, FaultInjectionIsDetected) {
    TableOptions opt = small_options();
    CellKey key{1, RowClass::N4, Family::Crs, e(2), e(1)};
    opt.expected_override[key] = CanonicalGroup::cyclic(7);
    VerifyReport rep = verify_table(1, opt);
    EXPECT_FALSE(rep.ok());
    ASSERT_EQ(rep.failures.size(), 1u);
    EXPECT_NE(rep.failures[0].find("C_r^{n+2,s}"), std::string::npos);
    EXPECT_EQ(rep.matched + 1, rep.checked);

    TableOptions clean = small_options();
    EXPECT_TRUE(verify_table(1, clean).ok());
}

TEST(Verify, SuspensionConsistencyDetectsInjectedDisagreement) {
    TableOptions opt = small_options();
    auto t1 = regenerate(1, opt), t2 = regenerate(2, opt);
    EXPECT_TRUE(suspension_consistency(t1, t2).empty());
    for (auto& c : t2)
        if (c.key.family == Family::Mn1 && c.key.row == RowClass::N5 && c.key.r == e(2)) c.expected = CanonicalGroup::cyclic(5);
    EXPECT_FALSE(suspension_consistency(t1, t2).empty());
}

TEST(Render, MarkdownLayout) {
    TableOptions opt = small_options();
    opt.r_values = {e(1), kInf};
    opt.s_values = {e(1)};
    std::string md = render_markdown(1, regenerate(1, opt));
    EXPECT_NE(md.find("# Table 1"), std::string::npos);
    EXPECT_NE(md.find("## r=1, s=1"), std::string::npos);
    EXPECT_NE(md.find("## r=inf, s=1"), std::string::npos);
    EXPECT_NE(md.find("| n>=5 |"), std::string::npos);
    EXPECT_NE(md.find("n/a"), std::string::npos);
    EXPECT_NE(md.find("(reference)"), std::string::npos);
}
