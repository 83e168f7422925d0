#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "neurocap/data/synthetic.hpp"
#include "neurocap/error.hpp"
#include "neurocap/text/tokenize.hpp"
#include "neurocap/text/vocabulary.hpp"
#include "oracles.hpp"

using namespace neurocap;
using text::Vocabulary;

namespace {

Vocabulary cat_dog_vocab(std::size_t min_freq) {
    const std::vector<std::string> corpus{"a cat", "a dog"};
    return text::build_vocabulary(corpus, min_freq);
}

}  // namespace

TEST(Tokenize, LowercasesAndStripsPunctuation) {
    EXPECT_EQ(text::tokenize("A cat, sleeping."), (std::vector<std::string>{"a", "cat", "sleeping"}));
}

TEST(Tokenize, EmptyInputGivesEmptyList) {
    EXPECT_TRUE(text::tokenize("").empty());
    EXPECT_TRUE(text::tokenize("  \t\n ").empty());
    EXPECT_TRUE(text::tokenize("... ,,, !").empty());
}

TEST(Tokenize, KeepsInteriorApostrophe) {
    EXPECT_EQ(text::tokenize("Don't stop"), (std::vector<std::string>{"don't", "stop"}));
}

TEST(Tokenize, SplitsOnUnicodeWhitespace) {
    // U+00A0 no-break space and U+3000 ideographic space.
    EXPECT_EQ(text::tokenize("red\xC2\xA0" "cat\xE3\x80\x80sits"),
              (std::vector<std::string>{"red", "cat", "sits"}));
}

TEST(Tokenize, NormalizeJoinsWithSingleSpaces) {
    EXPECT_EQ(text::normalize("  The   DOG, runs!  "), "the dog runs");
}

TEST(Vocabulary, SpecialsOccupyFirstFourIndices) {
    const Vocabulary v;
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v.token(0), "<pad>");
    EXPECT_EQ(v.token(1), "<start>");
    EXPECT_EQ(v.token(2), "<end>");
    EXPECT_EQ(v.token(3), "<unk>");
}

TEST(Vocabulary, MinFreqTwoKeepsOnlyRepeatedToken) {
    const auto v = cat_dog_vocab(2);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v.find("a"), 4);
    EXPECT_FALSE(v.find("cat").has_value());
    EXPECT_FALSE(v.find("dog").has_value());
}

TEST(Vocabulary, MinFreqOneBreaksTiesAlphabetically) {
    const auto v = cat_dog_vocab(1);
    ASSERT_EQ(v.size(), 7u);
    EXPECT_EQ(v.find("a"), 4);
    EXPECT_EQ(v.find("cat"), 5);
    EXPECT_EQ(v.find("dog"), 6);
}

TEST(Vocabulary, RejectsEmptyCorpusAndZeroThreshold) {
    const std::vector<std::string> none;
    EXPECT_THROW(text::build_vocabulary(none, 2), DataError);
    const std::vector<std::string> one{"a"};
    EXPECT_THROW(text::build_vocabulary(one, 0), ArgumentError);
}

TEST(Vocabulary, FromTokensValidatesSpecialsAndDuplicates) {
    EXPECT_THROW(Vocabulary::from_tokens({"<start>", "<pad>", "<end>", "<unk>"}), DataError);
    EXPECT_THROW(Vocabulary::from_tokens({"<pad>", "<start>", "<end>", "<unk>", "x", "x"}), DataError);
}

TEST(Encode, MapsUnknownTokensToUnk) {
    const auto v = cat_dog_vocab(2);
    EXPECT_EQ(text::encode(v, "a cat"), (std::vector<int>{1, 4, 3, 2}));
    EXPECT_EQ(text::encode(v, ""), (std::vector<int>{1, 2}));
}

TEST(Decode, StopsAtFirstEndAndRendersUnk) {
    const auto v = cat_dog_vocab(1);
    EXPECT_EQ(text::decode(v, std::vector<int>{1, 4, 2}), "a");
    EXPECT_EQ(text::decode(v, std::vector<int>{1, 4, 2, 5, 2}), "a");
    EXPECT_EQ(text::decode(v, std::vector<int>{1, 3, 2}), "<unk>");
    EXPECT_THROW(text::decode(v, std::vector<int>{1, 99, 2}), ArgumentError);
    EXPECT_THROW(text::decode(v, std::vector<int>{1, -1, 2}), ArgumentError);
}

TEST(Encode, RoundTripIsIdempotent) {
    const auto v = cat_dog_vocab(1);
    const auto first = text::encode(v, "A  Dog, a CAT.");
    const auto again = text::encode(v, text::decode(v, first));
    EXPECT_EQ(first, again);
    EXPECT_EQ(text::decode(v, first), "a dog a cat");
}

TEST(Vocabulary, SyntheticCorpusRoundTripAndRecount) {
    data::SyntheticSpec spec;
    spec.concepts = 10;
    spec.per_concept = 200;
    const auto ds = data::generate_synthetic(spec, 11);
    std::vector<std::string> corpus;
    for (const auto& row : ds.captions) corpus.push_back(row.caption);
    ASSERT_EQ(corpus.size(), 2000u);

    for (std::size_t min_freq : {1u, 2u, 50u, 400u}) {
        const auto v = text::build_vocabulary(corpus, min_freq);
        std::map<std::string, std::size_t> counts;
        for (const auto& c : corpus)
            for (const auto& t : text::tokenize(c)) ++counts[t];
        for (std::size_t k = 0; k < text::kSpecialCount; ++k) EXPECT_EQ(v.token(static_cast<int>(k)), Vocabulary().token(static_cast<int>(k)));
        std::size_t expected = text::kSpecialCount;
        for (const auto& [tok, n] : counts) expected += n >= min_freq ? 1 : 0;
        EXPECT_EQ(v.size(), expected) << "min_freq=" << min_freq;
        for (std::size_t k = text::kSpecialCount; k < v.size(); ++k) {
            const auto& tok = v.token(static_cast<int>(k));
            EXPECT_GE(counts[tok], min_freq) << tok;
            if (k + 1 < v.size()) {
                const auto& next = v.token(static_cast<int>(k + 1));
                EXPECT_TRUE(counts[tok] > counts[next] || (counts[tok] == counts[next] && tok < next));
            }
        }
        if (min_freq == 1) {
            for (const auto& c : corpus) EXPECT_EQ(text::decode(v, text::encode(v, c)), text::normalize(c));
        }
    }
}

TEST(Vocabulary, SaveLoadRoundTrip) {
    support::TempDir dir("vocab");
    const auto v = cat_dog_vocab(1);
    text::save_vocabulary(v, dir / "vocab.txt");
    const auto back = text::load_vocabulary(dir / "vocab.txt");
    EXPECT_EQ(back, v);
    EXPECT_EQ(back.hash(), v.hash());
}

TEST(Vocabulary, LoadRejectsDuplicateOrMisplacedSpecials) {
    support::TempDir dir("vocab-bad");
    {
        std::ofstream out(dir / "dup.txt");
        out << "<pad>\n<start>\n<end>\n<unk>\ncat\ncat\n";
    }
    EXPECT_THROW(text::load_vocabulary(dir / "dup.txt"), DataError);
    {
        std::ofstream out(dir / "order.txt");
        out << "<start>\n<pad>\n<end>\n<unk>\n";
    }
    EXPECT_THROW(text::load_vocabulary(dir / "order.txt"), DataError);
    EXPECT_THROW(text::load_vocabulary(dir / "missing.txt"), DataError);
}

TEST(CaptionRecord, FramedByStartAndEnd) {
    const auto v = cat_dog_vocab(1);
    const auto rec = text::make_caption_record(v, "s1", "subj01", "A dog.");
    EXPECT_EQ(rec.tokens, (std::vector<int>{1, 4, 6, 2}));
    EXPECT_NO_THROW(text::validate_sequence(v, rec.tokens));
    EXPECT_THROW(text::validate_sequence(v, std::vector<int>{1, 0, 2}), ArgumentError);
    EXPECT_THROW(text::validate_sequence(v, std::vector<int>{4, 2}), ArgumentError);
    EXPECT_THROW(text::validate_sequence(v, std::vector<int>{1, 2, 4, 2}), ArgumentError);
}
