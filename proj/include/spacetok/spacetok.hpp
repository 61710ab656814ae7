#pragma once

#include "spacetok/affixes.hpp"
#include "spacetok/bpe.hpp"
#include "spacetok/error.hpp"
#include "spacetok/model_io.hpp"
#include "spacetok/morphoeval.hpp"
#include "spacetok/textnorm.hpp"
#include "spacetok/tokenizer.hpp"
#include "spacetok/types.hpp"
#include "spacetok/unigram.hpp"
#include "spacetok/utf8.hpp"
#include "spacetok/vocabstats.hpp"
#include "spacetok/wordpiece.hpp"
