#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dtsne/io.hpp"

namespace fs = std::filesystem;
using dtsne::Error;
using dtsne::ErrorCode;
using dtsne::io::TsvTable;

namespace {

class TsvTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("dtsne_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& content) {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p;
    }

    std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    ErrorCode code_of(const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        ADD_FAILURE() << "expected an Error";
        return ErrorCode::SpecInvalid;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(TsvTest, ParsesSimpleTable) {
    const auto t = dtsne::io::read_tsv(write("a.tsv", "1.0\t2.0\n3.0\t4.0\n"));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.n_cols, 2u);
    EXPECT_EQ(t.rows[0], (std::vector<double>{1, 2}));
    EXPECT_EQ(t.rows[1], (std::vector<double>{3, 4}));
}

TEST_F(TsvTest, ToleratesMissingOrBlankTrailingLine) {
    EXPECT_EQ(dtsne::io::read_tsv(write("a.tsv", "1\t2\n3\t4")).rows.size(), 2u);
    EXPECT_EQ(dtsne::io::read_tsv(write("b.tsv", "1\t2\n3\t4\n\n")).rows.size(), 2u);
}

TEST_F(TsvTest, AcceptsScientificNotation) {
    const auto t = dtsne::io::read_tsv(write("a.tsv", "1e-3\t-2.5E+2\n"));
    EXPECT_DOUBLE_EQ(t.rows[0][0], 1e-3);
    EXPECT_DOUBLE_EQ(t.rows[0][1], -250);
}

TEST_F(TsvTest, RaggedRowsAreRejected) {
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(write("a.tsv", "1.0\t2.0\n3.0\n")); }), ErrorCode::RaggedRows);
}

TEST_F(TsvTest, EmptyFileIsAParseError) {
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(write("a.tsv", "")); }), ErrorCode::ParseError);
}

TEST_F(TsvTest, ParseErrorReportsLineAndColumn) {
    try {
        dtsne::io::read_tsv(write("a.tsv", "1\t2\n3\tx\n"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find(":2:2:"), std::string::npos) << e.what();
    }
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(write("b.tsv", "1,2\n")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(write("c.tsv", "nan\t1\n")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(write("d.tsv", "1\t2\n\n3\t4\n")); }), ErrorCode::ParseError);
}

TEST_F(TsvTest, MissingFile) {
    EXPECT_EQ(code_of([&] { dtsne::io::read_tsv(dir_ / "nope.tsv"); }), ErrorCode::FileNotFound);
}

TEST_F(TsvTest, WritesShortestRepresentation) {
    TsvTable t;
    t.n_cols = 2;
    t.rows = {{1, 2}};
    dtsne::io::write_tsv(t, dir_ / "o.tsv");
    EXPECT_EQ(slurp(dir_ / "o.tsv"), "1\t2\n");
}

TEST_F(TsvTest, WriteToMissingDirectoryFails) {
    TsvTable t;
    t.n_cols = 1;
    t.rows = {{1}};
    EXPECT_EQ(code_of([&] { dtsne::io::write_tsv(t, dir_ / "no" / "such" / "o.tsv"); }), ErrorCode::IoError);
}

TEST_F(TsvTest, RoundTripIsExactForRandomTables) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mant(-1, 1);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int trial = 0; trial < 20; ++trial) {
        TsvTable t;
        t.n_cols = 1 + static_cast<std::size_t>(trial % 4);
        for (int r = 0; r < 7; ++r) {
            std::vector<double> row;
            for (std::size_t c = 0; c < t.n_cols; ++c) {
                row.push_back(mant(rng) * std::pow(10.0, expo(rng) / 10));
            }
            t.rows.push_back(row);
        }
        const auto p = dir_ / ("rt" + std::to_string(trial) + ".tsv");
        dtsne::io::write_tsv(t, p);
        const auto back = dtsne::io::read_tsv(p);
        ASSERT_EQ(back.n_cols, t.n_cols);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            for (std::size_t c = 0; c < t.n_cols; ++c) {
                EXPECT_NEAR(back.rows[r][c], t.rows[r][c], 1e-12 * std::max(1.0, std::abs(t.rows[r][c])));
                EXPECT_EQ(back.rows[r][c], t.rows[r][c]);
            }
        }
    }
}

TEST_F(TsvTest, DatasetFromTsv) {
    const auto d = dtsne::io::dataset_from_tsv(write("d.tsv", "0\t0\n1\t1\n2\t0\n"));
    EXPECT_EQ(d.n(), 3);
    EXPECT_EQ(d.m(), 2);
    EXPECT_FALSE(d.labels.has_value());
    EXPECT_EQ(d.name, "d");
}

TEST_F(TsvTest, DatasetWithLabels) {
    const auto d = dtsne::io::dataset_from_tsv(write("d.tsv", "0\t0\n1\t1\n2\t0\n"), write("d.lab", "0\n1\n1\n"));
    ASSERT_TRUE(d.labels.has_value());
    EXPECT_EQ(*d.labels, (std::vector<int>{0, 1, 1}));
}

TEST_F(TsvTest, LabelLengthMismatch) {
    EXPECT_EQ(code_of([&] {
                  dtsne::io::dataset_from_tsv(write("d.tsv", "0\t0\n1\t1\n2\t0\n"), write("d.lab", "0\n1\n1\n2\n"));
              }),
              ErrorCode::LabelLengthMismatch);
}

TEST_F(TsvTest, NonIntegerLabelsAreRejected) {
    EXPECT_EQ(code_of([&] { dtsne::io::read_labels(write("l.lab", "0\n1.5\n")); }), ErrorCode::ParseError);
}

TEST_F(TsvTest, SingleRowDatasetFailsValidation) {
    EXPECT_EQ(code_of([&] { dtsne::io::dataset_from_tsv(write("d.tsv", "1\t2\t3\t4\t5\n")); }),
              ErrorCode::TooFewSamples);
}

TEST_F(TsvTest, EmbeddingWritesTwoColumns) {
    dtsne::Embedding e;
    e.coords = dtsne::Matrix(2, 2);
    e.coords << 0.5, -1, 2, 3.25;
    dtsne::io::embedding_to_tsv(e, dir_ / "e.tsv");
    EXPECT_EQ(slurp(dir_ / "e.tsv"), "0.5\t-1\n2\t3.25\n");
    const auto back = dtsne::io::embedding_from_tsv(dir_ / "e.tsv");
    EXPECT_EQ(back.dim, 2);
    EXPECT_EQ(back.coords, e.coords);
}

TEST_F(TsvTest, EmbeddingNeedsTwoOrThreeColumns) {
    EXPECT_EQ(code_of([&] { dtsne::io::embedding_from_tsv(write("e.tsv", "1\t2\t3\t4\n")); }), ErrorCode::ParseError);
}
