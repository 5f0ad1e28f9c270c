#pragma once

#include "ftest/core/ideal.hpp"
#include "ftest/core/ideal_text.hpp"
#include "ftest/frobenius/ceil_split.hpp"
#include "ftest/frobenius/jumping.hpp"
#include "ftest/frobenius/root.hpp"
#include "ftest/frobenius/test_ideal.hpp"
#include "ftest/asymptotic/asymptotic.hpp"
#include "ftest/toric/fan.hpp"
#include "ftest/toric/divisor.hpp"
#include "ftest/toric/toric.hpp"
#include "ftest/toric/io.hpp"
#include "ftest/sequence_text.hpp"
#include "ftest/verify.hpp"
