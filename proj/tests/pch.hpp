#pragma once
#include <gtest/gtest.h>
#include "golie/driver.hpp"
