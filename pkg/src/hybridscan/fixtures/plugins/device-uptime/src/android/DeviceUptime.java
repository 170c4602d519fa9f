package org.example.deviceuptime;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.os.SystemClock;

public class DeviceUptime extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        long up = SystemClock.elapsedRealtime();
        callbackContext.success(String.valueOf(up));
        return true;
    }
}
