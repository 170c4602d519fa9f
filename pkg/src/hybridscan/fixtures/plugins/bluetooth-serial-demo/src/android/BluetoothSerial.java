package org.example.bluetoothserial;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.bluetooth.BluetoothAdapter;
import android.bluetooth.BluetoothDevice;

public class BluetoothSerial extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        BluetoothAdapter adapter = BluetoothAdapter.getDefaultAdapter();
        JSONArray devices = new JSONArray();
        for (BluetoothDevice device : adapter.getBondedDevices()) {
            JSONObject json = new JSONObject();
            json.put("name", device.getName());
            json.put("address", device.getAddress());
            devices.put(json);
        }
        callbackContext.success(devices);
        return true;
    }
}
