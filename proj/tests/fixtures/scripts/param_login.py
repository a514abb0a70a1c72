# Copyright 2026 The skillgrade Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import pytest


@pytest.mark.parametrize("user,password", [("u1", "p1"), ("u2", "p2")])
def test_login(driver, user, password):
    driver.open("/login")
    driver.type("#user", user)
    driver.type("#password", password)
    capture("login_result.png")
