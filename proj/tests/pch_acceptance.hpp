#pragma once
#include "golie/driver.hpp"
